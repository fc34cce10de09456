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
#include <queue>
#include <span>
#include <vector>

#include "smkp/core.hpp"
#include "smkp/errors.hpp"
#include "smkp/instance.hpp"
#include "smkp/oracle.hpp"
#include "smkp/rational.hpp"

namespace smkp {

enum class GreedyMode {
  kLazy,   // priority-queue engine with stale-bound recomputation
  kNaive,  // full rescan every iteration; the reference behavior
};

template <class V>
struct GreedyResult {
  Packing packing;            // bins 1..capacities.size(); may carry reserved marks
  std::vector<ElementId> order;  // selection sequence
  std::vector<V> bin_loads;   // final load per bin, reserved elements included
};

namespace detail {

// Shared placement rule: into the given bin, reserved if it overflows.
template <class V>
void greedy_place(GreedyResult<V>& result, SortedSet& picked, ElementId u,
                  std::int32_t bin, std::span<const V> sizes,
                  std::span<const V> capacities) {
  result.packing.bin_of[u] = bin;
  result.bin_loads[bin - 1] += sizes[u];
  if (result.bin_loads[bin - 1] > capacities[bin - 1]) {
    result.packing.reserved.emplace_back(u, bin);
  }
  result.order.push_back(u);
  set_insert(picked, u);
}

}  // namespace detail

// Density greedy over a ground set and a list of residual bin capacities.
//
// Repeats while an unpacked element remains and some bin load is strictly
// below its capacity: pick the element maximizing marginal value divided by
// size (ties to the lowest id), place it into the lowest-indexed non-full bin,
// and mark it reserved there when it overflows that bin. A bin stops
// accepting once its load reaches capacity, so each bin overflows at most
// once and removing its reserved element makes it fit again.
//
// Elements never shrink the objective (monotone f), so zero-marginal elements
// are packed too; the output covers the whole ground set unless every bin
// filled up first.
//
// Both modes produce the identical selection sequence; the lazy engine only
// skips recomputations that submodularity proves redundant. Marginals are
// evaluated against the view, so callers condition via OracleView.
template <class V>
GreedyResult<V> greedy(const OracleView<V>& f, std::span<const ElementId> ground,
                       ArgSpan<V> sizes, ArgSpan<V> capacities,
                       GreedyMode mode = GreedyMode::kLazy) {
  require(is_canonical_set(ground), ErrorCode::kInternalInvariant,
          "greedy ground set must be sorted");
  for (ElementId u : ground) {
    require(u < sizes.size(), ErrorCode::kInvalidElement, "ground element without size");
    require(sizes[u] > V(0), ErrorCode::kInternalInvariant,
            "zero-size element reached greedy");
  }

  const std::size_t m = capacities.size();
  GreedyResult<V> result;
  result.packing = Packing::empty(sizes.size());
  result.bin_loads.assign(m, V(0));
  if (ground.empty() || m == 0) return result;

  auto open_bin = [&]() -> std::int32_t {
    for (std::size_t j = 0; j < m; ++j) {
      if (result.bin_loads[j] < capacities[j]) return static_cast<std::int32_t>(j + 1);
    }
    return 0;
  };

  SortedSet picked;  // current selection S, sorted
  V current_value(0);

  if (mode == GreedyMode::kNaive) {
    SortedSet remaining(ground.begin(), ground.end());
    while (!remaining.empty()) {
      const std::int32_t bin = open_bin();
      if (bin == 0) break;
      bool have_best = false;
      ElementId best_u = 0;
      V best_value(0);
      V best_density(0);
      for (ElementId u : remaining) {
        V candidate = f.value(set_with(picked, u));
        V density = (candidate - current_value) / sizes[u];
        if (!have_best || density > best_density) {
          have_best = true;
          best_u = u;
          best_value = candidate;
          best_density = density;
        }
      }
      detail::greedy_place(result, picked, best_u, bin, sizes, capacities);
      current_value = best_value;
      remaining.erase(std::lower_bound(remaining.begin(), remaining.end(), best_u));
    }
    return result;
  }

  // Lazy engine. Entries are (density upper bound, id); stale entries carry a
  // density from an earlier, smaller selection, which submodularity makes an
  // upper bound on the true one. Recompute until the top is fresh: the
  // comparator (density desc, id asc) then guarantees the fresh top is exactly
  // the element the naive scan would pick, ties included.
  struct Entry {
    V density;
    V candidate_value;  // f-view value of picked + u at recomputation time
    ElementId id;
    std::uint32_t stamp;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.density != b.density) return a.density < b.density;
    return a.id > b.id;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);
  for (ElementId u : ground) {
    V candidate = f.value(SortedSet{u});
    queue.push(Entry{candidate / sizes[u], candidate, u, 0});
  }
  std::uint32_t iteration = 0;
  while (!queue.empty()) {
    const std::int32_t bin = open_bin();
    if (bin == 0) break;
    Entry top = queue.top();
    while (top.stamp != iteration) {
      queue.pop();
      V candidate = f.value(set_with(picked, top.id));
      queue.push(Entry{(candidate - current_value) / sizes[top.id], candidate, top.id,
                       iteration});
      top = queue.top();
    }
    queue.pop();
    detail::greedy_place(result, picked, top.id, bin, sizes, capacities);
    current_value = top.candidate_value;
    ++iteration;
  }
  return result;
}

// Certified check of the saturation bound: if the greedy selection S filled
// every bin (total size at least the total capacity), then for any reference
// set X, f(S) >= (1 - e^{-c(S)/c(X)}) f(X); otherwise greedy must have packed
// its whole ground set, and the bound holds by monotonicity. Returns whether
// the inequality provably holds; the transcendental factor is bracketed and
// refined until the comparison resolves.
template <class V>
bool check_greedy_bound(const Instance<V>& inst, const GreedyResult<V>& greedy_out,
                        std::span<const ElementId> ground,
                        std::span<const ElementId> reference) {
  static_assert(ValueTraits<V>::kExact, "guarantee checks are exact-mode only");
  const V f_x = inst.oracle->evaluate(reference);
  if (!(f_x > V(0))) return true;
  const SortedSet s = greedy_out.packing.elements();
  const V f_s = inst.oracle->evaluate(s);
  const V c_s = inst.size_of(s);
  V total_capacity(0);
  for (const V& b : inst.capacities) total_capacity += b;

  if (c_s < total_capacity) {
    // Greedy only stops early when it ran out of elements.
    if (s.size() != ground.size()) return false;
    return f_s >= f_x;
  }

  const V c_x = inst.size_of(reference);
  if (!(c_x > V(0))) return true;
  const Rational x = Rational(c_s) / Rational(c_x);
  for (unsigned terms = 24; terms <= 24 * 16; terms *= 2) {
    RationalInterval bound = one_minus_exp_neg_interval(x, terms);
    if (f_s >= bound.hi * f_x) return true;   // beats an upper bound: certain pass
    if (f_s < bound.lo * f_x) return false;   // below a lower bound: certain fail
  }
  return false;  // unresolved at maximum precision: report conservatively
}

}  // namespace smkp
