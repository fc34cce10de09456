// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

namespace smkp {

// Elements are dense indices into the ground set. The total order on ids is
// the universal tie-breaker, which is what makes every solver deterministic.
using ElementId = std::uint32_t;

// Sets are sorted, duplicate-free id sequences.
using SortedSet = std::vector<ElementId>;

// Span parameter that stays out of template deduction, so callers can pass
// vectors while the value type is pinned by another argument (or spelled
// explicitly).
template <class T>
using ArgSpan = std::type_identity_t<std::span<const T>>;

inline bool is_canonical_set(std::span<const ElementId> s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i - 1] >= s[i]) return false;
  }
  return true;
}

inline bool set_contains(std::span<const ElementId> s, ElementId u) {
  return std::binary_search(s.begin(), s.end(), u);
}

inline SortedSet set_union(std::span<const ElementId> a, std::span<const ElementId> b) {
  SortedSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline SortedSet set_difference(std::span<const ElementId> a,
                                std::span<const ElementId> b) {
  SortedSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline SortedSet set_with(std::span<const ElementId> s, ElementId u) {
  SortedSet out(s.begin(), s.end());
  out.insert(std::upper_bound(out.begin(), out.end(), u), u);
  return out;
}

inline void set_insert(SortedSet& s, ElementId u) {
  auto it = std::lower_bound(s.begin(), s.end(), u);
  if (it == s.end() || *it != u) s.insert(it, u);
}

inline SortedSet full_ground(std::size_t n) {
  SortedSet out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<ElementId>(i);
  return out;
}

}  // namespace smkp
