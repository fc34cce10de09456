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
#include <functional>
#include <span>
#include <vector>

#include "smkp/core.hpp"
#include "smkp/errors.hpp"
#include "smkp/instance.hpp"
#include "smkp/rational.hpp"

namespace smkp {

// Upper bound on the number of bounded placements: sum_{i<=k} C(n,i) * m^i.
inline BigInt bounded_packing_bound(std::size_t n, std::size_t m, std::size_t max_elements) {
  BigInt total = 0;
  BigInt binom = 1;  // C(n, i)
  BigInt power = 1;  // m^i
  const std::size_t cap = std::min(max_elements, n);
  for (std::size_t i = 0; i <= cap; ++i) {
    total += binom * power;
    binom = binom * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
    power *= static_cast<unsigned>(m);
  }
  return total;
}

// Enumerates every capacity-feasible packing of at most `max_elements` ground
// elements into the labeled bins, each exactly once, in a canonical order:
// subsets by size then lexicographically by their sorted id tuple, and for a
// fixed subset the assignment vectors in lexicographic order (bin of the
// smallest element most significant). The callback returns false to stop, and
// also receives the enumeration index. The empty packing is candidate 0.
//
// Refuses upfront (kResourceLimit) when the candidate bound exceeds `budget`.
template <class V>
void enumerate_bounded_packings(
    std::span<const ElementId> ground, ArgSpan<V> sizes,
    ArgSpan<V> capacities, std::size_t max_elements, std::uint64_t budget,
    const std::function<bool(const Packing&, std::uint64_t index)>& yield) {
  require(is_canonical_set(ground), ErrorCode::kInternalInvariant,
          "enumeration ground set must be sorted");
  require(bounded_packing_bound(ground.size(), capacities.size(), max_elements) <=
              BigInt(budget),
          ErrorCode::kResourceLimit,
          "bounded enumeration exceeds the candidate budget");

  const std::size_t n = ground.size();
  const std::size_t m = capacities.size();
  const std::size_t cap = std::min(max_elements, n);
  std::uint64_t index = 0;

  Packing packing = Packing::empty(sizes.size());
  if (!yield(packing, index++)) return;  // empty packing first
  if (m == 0) return;

  std::vector<std::size_t> combo;   // indices into ground, increasing
  std::vector<std::int32_t> bins;   // bin per combo slot, 1-based
  std::vector<V> loads(m, V(0));

  for (std::size_t k = 1; k <= cap; ++k) {
    combo.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i) combo[i] = i;
    bool more_subsets = true;
    while (more_subsets) {
      // All assignments of this subset, as a base-m odometer over slots.
      bins.assign(k, 1);
      bool more_assignments = true;
      while (more_assignments) {
        std::fill(loads.begin(), loads.end(), V(0));
        bool fits = true;
        for (std::size_t i = 0; i < k && fits; ++i) {
          const ElementId u = ground[combo[i]];
          loads[bins[i] - 1] += sizes[u];
          fits = loads[bins[i] - 1] <= capacities[bins[i] - 1];
        }
        if (fits) {
          for (std::size_t i = 0; i < k; ++i) packing.bin_of[ground[combo[i]]] = bins[i];
          const bool keep_going = yield(packing, index++);
          for (std::size_t i = 0; i < k; ++i) packing.bin_of[ground[combo[i]]] = 0;
          if (!keep_going) return;
        }
        // Next assignment vector: increment the least significant slot.
        std::size_t slot = k;
        while (slot > 0) {
          --slot;
          if (bins[slot] < static_cast<std::int32_t>(m)) {
            ++bins[slot];
            for (std::size_t j = slot + 1; j < k; ++j) bins[j] = 1;
            break;
          }
          if (slot == 0) more_assignments = false;
        }
      }
      // Next k-combination in lexicographic order.
      std::size_t pos = k;
      while (pos > 0) {
        --pos;
        if (combo[pos] < n - (k - pos)) {
          ++combo[pos];
          for (std::size_t j = pos + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
          break;
        }
        if (pos == 0) more_subsets = false;
      }
    }
  }
}

// Enumerates every feasible placement of a subset of `ground` into at most k
// unlabeled bins of common capacity B, one representative per equivalence
// class under bin permutation. Elements are processed in increasing id; each
// is skipped, added to an existing group, or opens the next group, which is
// the restricted-growth encoding of set partitions and therefore hits each
// class exactly once. Groups are reported in order of their smallest element.
//
// The callback receives the groups and the enumeration index (the all-skip
// leaf, i.e. the empty placement, is candidate 0) and returns false to stop.
template <class V>
void enumerate_identical_bin_packings(
    std::span<const ElementId> ground, ArgSpan<V> sizes, std::size_t k,
    const V& capacity, std::uint64_t budget,
    const std::function<bool(const std::vector<SortedSet>&, std::uint64_t index)>&
        yield) {
  require(is_canonical_set(ground), ErrorCode::kInternalInvariant,
          "enumeration ground set must be sorted");
  std::vector<SortedSet> groups;
  std::vector<V> loads;
  std::uint64_t index = 0;
  bool stopped = false;

  std::function<void(std::size_t)> walk = [&](std::size_t pos) {
    if (stopped) return;
    if (pos == ground.size()) {
      if (index >= budget) {
        fail(ErrorCode::kResourceLimit,
             "identical-bin enumeration exceeds the candidate budget");
      }
      if (!yield(groups, index++)) stopped = true;
      return;
    }
    const ElementId u = ground[pos];
    walk(pos + 1);  // skip u
    if (stopped) return;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (loads[g] + sizes[u] <= capacity) {
        groups[g].push_back(u);
        loads[g] += sizes[u];
        walk(pos + 1);
        groups[g].pop_back();
        loads[g] -= sizes[u];
        if (stopped) return;
      }
    }
    if (groups.size() < k && sizes[u] <= capacity) {
      groups.emplace_back(SortedSet{u});
      loads.push_back(sizes[u]);
      walk(pos + 1);
      groups.pop_back();
      loads.pop_back();
    }
  };
  walk(0);
}

}  // namespace smkp
