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

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "smkp/core.hpp"
#include "smkp/errors.hpp"
#include "smkp/oracle.hpp"
#include "smkp/rational.hpp"

namespace smkp {

// A problem instance: n elements with positive sizes, m bins with positive
// capacities, and a value oracle over the elements.
template <class V>
struct Instance {
  std::size_t n = 0;
  std::vector<V> sizes;
  std::vector<V> capacities;
  std::shared_ptr<Oracle<V>> oracle;

  std::size_t m() const { return capacities.size(); }

  void validate() const {
    require(oracle != nullptr, ErrorCode::kMalformedInput, "instance without oracle");
    require(oracle->ground_size() == n, ErrorCode::kMalformedInput,
            "oracle ground set does not match n");
    require(sizes.size() == n, ErrorCode::kMalformedInput, "sizes.size() != n");
    require(!capacities.empty(), ErrorCode::kMalformedInput, "instance needs a bin");
    for (const V& c : sizes) {
      require(c > V(0), ErrorCode::kMalformedInput, "element sizes must be positive");
    }
    for (const V& b : capacities) {
      require(b > V(0), ErrorCode::kMalformedInput, "bin capacities must be positive");
    }
  }

  V size_of(std::span<const ElementId> set) const {
    V total(0);
    for (ElementId u : set) total += sizes[u];
    return total;
  }
};

// An assignment of elements to bins. Bins are 1-based externally; 0 means
// unpacked. A packing may carry reserved markers: at most one element per bin
// that was allowed to overflow it. With every reserved element removed, each
// bin load fits its capacity ("almost feasible"); with no markers at all the
// packing is strictly feasible.
struct Packing {
  std::vector<std::int32_t> bin_of;                       // size n, 0 = unpacked
  std::vector<std::pair<ElementId, std::int32_t>> reserved;  // sorted by element

  static Packing empty(std::size_t n) {
    Packing p;
    p.bin_of.assign(n, 0);
    return p;
  }

  SortedSet elements() const {
    SortedSet out;
    for (std::size_t u = 0; u < bin_of.size(); ++u) {
      if (bin_of[u] != 0) out.push_back(static_cast<ElementId>(u));
    }
    return out;
  }

  SortedSet bin_elements(std::int32_t bin) const {
    SortedSet out;
    for (std::size_t u = 0; u < bin_of.size(); ++u) {
      if (bin_of[u] == bin) out.push_back(static_cast<ElementId>(u));
    }
    return out;
  }

  bool is_reserved(ElementId u) const {
    for (const auto& [e, b] : reserved) {
      if (e == u) return true;
    }
    return false;
  }

  std::size_t packed_count() const {
    std::size_t c = 0;
    for (std::int32_t b : bin_of) c += b != 0;
    return c;
  }
};

// Number of bins holding at least one element.
inline std::size_t used_bins(const Packing& p) {
  std::vector<std::int32_t> bins;
  for (std::int32_t b : p.bin_of) {
    if (b != 0) bins.push_back(b);
  }
  std::sort(bins.begin(), bins.end());
  bins.erase(std::unique(bins.begin(), bins.end()), bins.end());
  return bins.size();
}

template <class V>
V value(const Instance<V>& inst, const Packing& p) {
  return inst.oracle->evaluate(p.elements());
}

template <class V>
struct FeasibilityReport {
  bool ok = true;
  std::vector<std::pair<std::int32_t, V>> violations;  // (bin, overflow)
};

// Checks loads against capacities. With allow_reserved, each bin's single
// reserved element (if any) is excluded from its load first. Also validates
// structural sanity: bin indices in range, reserved markers consistent and at
// most one per bin.
template <class V>
FeasibilityReport<V> check_feasible(const Instance<V>& inst, const Packing& p,
                                    bool allow_reserved) {
  const std::size_t m = inst.m();
  require(p.bin_of.size() == inst.n, ErrorCode::kMalformedInput,
          "packing does not match instance size");
  for (std::size_t u = 0; u < p.bin_of.size(); ++u) {
    const std::int32_t b = p.bin_of[u];
    require(b >= 0 && static_cast<std::size_t>(b) <= m, ErrorCode::kInvalidBin,
            "bin index " + std::to_string(b) + " out of range");
  }
  std::vector<char> bin_has_reserved(m + 1, 0);
  for (const auto& [u, b] : p.reserved) {
    require(b >= 1 && static_cast<std::size_t>(b) <= m, ErrorCode::kInvalidBin,
            "reserved marker names an invalid bin");
    require(u < inst.n && p.bin_of[u] == b, ErrorCode::kInternalInvariant,
            "reserved marker does not match the assignment");
    require(!bin_has_reserved[b], ErrorCode::kInternalInvariant,
            "two reserved elements in one bin");
    bin_has_reserved[b] = 1;
  }

  std::vector<V> load(m + 1, V(0));
  for (std::size_t u = 0; u < p.bin_of.size(); ++u) {
    if (p.bin_of[u] != 0) load[p.bin_of[u]] += inst.sizes[u];
  }
  if (allow_reserved) {
    for (const auto& [u, b] : p.reserved) load[b] -= inst.sizes[u];
  }

  FeasibilityReport<V> report;
  for (std::size_t b = 1; b <= m; ++b) {
    if (load[b] > inst.capacities[b - 1]) {
      report.ok = false;
      report.violations.emplace_back(static_cast<std::int32_t>(b),
                                     load[b] - inst.capacities[b - 1]);
    }
  }
  return report;
}

// Removes every reserved element from the packing. On an almost-feasible
// input the result is strictly feasible.
inline Packing drop_reserved(const Packing& p) {
  Packing out = p;
  for (const auto& [u, b] : p.reserved) {
    (void)b;
    out.bin_of[u] = 0;
  }
  out.reserved.clear();
  return out;
}

// A packing certified strictly feasible against its instance.
struct FeasiblePacking {
  Packing packing;

  template <class V>
  static FeasiblePacking checked(const Instance<V>& inst, Packing p) {
    require(p.reserved.empty(), ErrorCode::kInternalInvariant,
            "feasible packing cannot carry reserved markers");
    auto report = check_feasible(inst, p, /*allow_reserved=*/false);
    require(report.ok, ErrorCode::kInternalInvariant,
            "packing is infeasible");
    return FeasiblePacking{std::move(p)};
  }
};

}  // namespace smkp
