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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "smkp/core.hpp"
#include "smkp/errors.hpp"
#include "smkp/instance.hpp"
#include "smkp/oracle.hpp"
#include "smkp/rational.hpp"

namespace smkp {

// Brute-force reference solvers. These exist so that approximation guarantees
// of the polynomial algorithms can be checked against true optima on small
// instances. They are exponential and refuse inputs beyond an explicit budget.

template <class V>
struct ExactResult {
  V value{};
  Packing packing;
};

// Exhaustive search over all feasible assignments of elements to bins (or to
// no bin). Among all optimal assignments, returns the one whose assignment
// vector is lexicographically smallest with "unpacked" ordered before bin 1.
template <class V>
ExactResult<V> exact_solve(const Instance<V>& inst,
                           const BigInt& assignment_budget = BigInt(20000000)) {
  inst.validate();
  const std::size_t n = inst.n;
  const std::size_t m = inst.m();

  BigInt total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= BigInt(m + 1);
    require(total <= assignment_budget, ErrorCode::kSizeLimit,
            "exact search space exceeds the assignment budget");
  }
  // assignment_budget <= 2e7 style limits keep n < 64, so a mask key fits.
  require(n < 64, ErrorCode::kSizeLimit, "exact search supports fewer than 64 elements");

  std::vector<std::int32_t> assign(n, 0);
  std::vector<V> loads(m, V(0));
  std::unordered_map<std::uint64_t, V> value_memo;
  SortedSet scratch;
  scratch.reserve(n);

  bool have_best = false;
  V best_value{};
  std::vector<std::int32_t> best_assign(n, 0);
  std::uint64_t mask = 0;

  auto dfs = [&](auto&& self, std::size_t pos) -> void {
    if (pos == n) {
      V value;
      auto it = value_memo.find(mask);
      if (it != value_memo.end()) {
        value = it->second;
      } else {
        scratch.clear();
        for (std::size_t u = 0; u < n; ++u) {
          if ((mask >> u) & 1u) scratch.push_back(static_cast<ElementId>(u));
        }
        value = inst.oracle->evaluate(scratch);
        value_memo.emplace(mask, value);
      }
      if (!have_best || value > best_value) {
        have_best = true;
        best_value = value;
        best_assign = assign;
      }
      return;
    }
    assign[pos] = 0;
    self(self, pos + 1);
    for (std::size_t b = 0; b < m; ++b) {
      const V saved = loads[b];
      const V next = saved + inst.sizes[pos];
      if (next <= inst.capacities[b]) {
        assign[pos] = static_cast<std::int32_t>(b + 1);
        loads[b] = next;
        mask |= std::uint64_t{1} << pos;
        self(self, pos + 1);
        mask &= ~(std::uint64_t{1} << pos);
        loads[b] = saved;
      }
    }
    assign[pos] = 0;
  };
  dfs(dfs, 0);
  require(have_best, ErrorCode::kInternalInvariant, "exact search visited no assignment");

  ExactResult<V> out;
  out.value = best_value;
  out.packing.bin_of = std::move(best_assign);
  return out;
}

// Independent dynamic program for additive objectives. Agreement between this
// routine and exact_solve on additive oracles is a cross-check that neither
// search harbors a systematic bug. Exact value types only.
template <class V>
V exact_modular_dp(const std::vector<V>& sizes, const std::vector<V>& capacities,
                   const std::vector<V>& weights,
                   std::size_t state_budget = std::size_t{1} << 20) {
  static_assert(ValueTraits<V>::kExact, "the dynamic program requires exact arithmetic");
  require(sizes.size() == weights.size(), ErrorCode::kMalformedInput,
          "sizes and weights must align");
  const std::size_t n = sizes.size();
  const std::size_t m = capacities.size();
  require(m >= 1 && m <= 3, ErrorCode::kSizeLimit,
          "the dynamic program supports one to three bins");
  for (const V& s : sizes) {
    require(s > V(0), ErrorCode::kMalformedInput, "sizes must be positive");
  }
  for (const V& b : capacities) {
    require(b > V(0), ErrorCode::kMalformedInput, "capacities must be positive");
  }
  for (const V& w : weights) {
    require(w >= V(0), ErrorCode::kMalformedInput, "weights must be nonnegative");
  }

  // Rescale so every size and capacity is an integer.
  BigInt scale = 1;
  auto fold_denominator = [&scale](const V& x) {
    const BigInt d = den(x);
    scale = scale / boost::multiprecision::gcd(scale, d) * d;
  };
  for (const V& s : sizes) fold_denominator(s);
  for (const V& b : capacities) fold_denominator(b);
  auto scaled = [&scale](const V& x) -> BigInt { return num(x) * (scale / den(x)); };

  std::vector<std::size_t> item(n);
  for (std::size_t u = 0; u < n; ++u) {
    const BigInt s = scaled(sizes[u]);
    require(s <= BigInt(state_budget), ErrorCode::kResourceLimit,
            "scaled sizes exceed the state budget");
    item[u] = to_size(s);
  }
  std::vector<std::size_t> cap(m), stride(m);
  std::size_t states = 1;
  for (std::size_t b = 0; b < m; ++b) {
    const BigInt c = scaled(capacities[b]);
    require(c <= BigInt(state_budget), ErrorCode::kResourceLimit,
            "scaled capacities exceed the state budget");
    cap[b] = to_size(c);
    stride[b] = states;
    const BigInt grown = BigInt(states) * BigInt(cap[b] + 1);
    require(grown <= BigInt(state_budget), ErrorCode::kResourceLimit,
            "load state space exceeds the state budget");
    states = to_size(grown);
  }

  // dp[s] = best weight over item prefixes whose bin loads encode to s.
  std::vector<std::optional<V>> dp(states);
  dp[0] = V(0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t s = states; s-- > 0;) {
      if (!dp[s]) continue;
      for (std::size_t b = 0; b < m; ++b) {
        const std::size_t load = (s / stride[b]) % (cap[b] + 1);
        if (load + item[u] > cap[b]) continue;
        const std::size_t ns = s + item[u] * stride[b];
        V candidate = *dp[s] + weights[u];
        if (!dp[ns] || candidate > *dp[ns]) dp[ns] = std::move(candidate);
      }
    }
  }
  V best = V(0);
  for (const auto& entry : dp) {
    if (entry && *entry > best) best = *entry;
  }
  return best;
}

template <class V>
struct ExactMatroidResult {
  V value{};
  SortedSet chosen;
};

// Exhaustive search over independent sets of a partition matroid: at most
// bounds[j] elements from partitions[j]. Among optima, returns the first in
// a skip-before-take depth-first order over partitions then element ids.
template <class V>
ExactMatroidResult<V> exact_partition_matroid(
    Oracle<V>& oracle, const std::vector<SortedSet>& partitions,
    const std::vector<std::size_t>& bounds,
    const BigInt& leaf_budget = BigInt(20000000)) {
  require(partitions.size() == bounds.size(), ErrorCode::kMalformedInput,
          "partitions and bounds must align");
  std::vector<bool> seen(oracle.ground_size(), false);
  BigInt leaves = 1;
  for (std::size_t j = 0; j < partitions.size(); ++j) {
    require(is_canonical_set(partitions[j]), ErrorCode::kMalformedInput,
            "partitions must be sorted and duplicate free");
    for (ElementId u : partitions[j]) {
      require(u < oracle.ground_size(), ErrorCode::kInvalidElement,
              "partition element outside the ground set");
      require(!seen[u], ErrorCode::kMalformedInput, "partitions must be disjoint");
      seen[u] = true;
    }
    // Subsets of partition j with at most bounds[j] elements.
    const std::size_t limit = std::min(bounds[j], partitions[j].size());
    BigInt options = 0;
    BigInt binom = 1;
    for (std::size_t i = 0; i <= limit; ++i) {
      options += binom;
      binom = binom * BigInt(partitions[j].size() - i) / BigInt(i + 1);
    }
    leaves *= options;
    require(leaves <= leaf_budget, ErrorCode::kSizeLimit,
            "matroid search space exceeds the leaf budget");
  }

  std::vector<ElementId> flat;
  std::vector<std::size_t> part_of;
  for (std::size_t j = 0; j < partitions.size(); ++j) {
    for (ElementId u : partitions[j]) {
      flat.push_back(u);
      part_of.push_back(j);
    }
  }

  std::vector<std::size_t> taken(partitions.size(), 0);
  std::vector<ElementId> chosen;
  bool have_best = false;
  V best_value{};
  SortedSet best_chosen;

  auto dfs = [&](auto&& self, std::size_t pos) -> void {
    if (pos == flat.size()) {
      SortedSet set(chosen.begin(), chosen.end());
      std::sort(set.begin(), set.end());
      const V value = oracle.evaluate(set);
      if (!have_best || value > best_value) {
        have_best = true;
        best_value = value;
        best_chosen = std::move(set);
      }
      return;
    }
    self(self, pos + 1);
    const std::size_t j = part_of[pos];
    if (taken[j] < bounds[j]) {
      ++taken[j];
      chosen.push_back(flat[pos]);
      self(self, pos + 1);
      chosen.pop_back();
      --taken[j];
    }
  };
  dfs(dfs, 0);
  require(have_best, ErrorCode::kInternalInvariant, "matroid search visited no set");

  ExactMatroidResult<V> out;
  out.value = best_value;
  out.chosen = std::move(best_chosen);
  return out;
}

}  // namespace smkp
