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
#include <memory>
#include <vector>

#include "smkp/core.hpp"
#include "smkp/errors.hpp"
#include "smkp/greedy.hpp"
#include "smkp/oracle.hpp"
#include "smkp/rational.hpp"

namespace smkp {

// Round-based greedy over a partition matroid: the ground set splits into
// disjoint groups, a feasible set takes at most bounds[j] elements from
// group j, and the solver spreads each group's quota over a fixed number of
// rounds so every group contributes to every round.

template <class V>
struct PartitionMatroidInstance {
  std::size_t n = 0;
  std::vector<SortedSet> partitions;   // disjoint, covering the ground set
  std::vector<std::size_t> bounds;     // per-partition cardinality cap, >= 1
  std::shared_ptr<Oracle<V>> oracle;
  Rational epsilon = Rational(1, 2);   // in (0, 1]
  bool guaranteed = false;             // bounds large enough for the analysis

  std::size_t r() const { return partitions.size(); }

  void validate() const {
    require(n >= 1, ErrorCode::kMalformedInput, "instance without elements");
    require(oracle != nullptr, ErrorCode::kMalformedInput, "instance without oracle");
    require(oracle->ground_size() == n, ErrorCode::kMalformedInput,
            "oracle ground set does not match n");
    require(!partitions.empty(), ErrorCode::kMalformedInput, "no partitions");
    require(partitions.size() == bounds.size(), ErrorCode::kMalformedInput,
            "partitions and bounds must align");
    require(epsilon > 0 && epsilon <= 1, ErrorCode::kMalformedInput,
            "epsilon must lie in (0, 1]");
    std::vector<char> owner(n, 0);
    for (std::size_t j = 0; j < partitions.size(); ++j) {
      require(is_canonical_set(partitions[j]), ErrorCode::kMalformedInput,
              "partitions must be sorted and duplicate free");
      require(bounds[j] >= 1, ErrorCode::kMalformedInput,
              "cardinality bounds must be positive");
      for (ElementId u : partitions[j]) {
        require(u < n, ErrorCode::kInvalidElement, "partition element outside ground");
        require(!owner[u], ErrorCode::kMalformedInput, "partitions must be disjoint");
        owner[u] = 1;
      }
      if (guaranteed) {
        require(Rational(BigInt(bounds[j])) * epsilon >= 1, ErrorCode::kMalformedInput,
                "guarantee-grade bounds must be at least 1/epsilon");
      }
    }
    for (std::size_t u = 0; u < n; ++u) {
      require(owner[u], ErrorCode::kMalformedInput, "partitions must cover the ground");
    }
  }
};

// Per-round pick quota for each partition. Rounds = ceil(1/epsilon), lowered
// to the smallest bound so no round is left without a pick anywhere; each
// bound splits as evenly as possible with the surplus on the earliest rounds,
// so totals meet the bounds exactly. For bounds of at least 1/epsilon this
// reproduces the floor(epsilon * bound)-plus-remainder schedule.
inline std::vector<std::vector<std::size_t>> matroid_schedule(
    const std::vector<std::size_t>& bounds, const Rational& epsilon) {
  require(epsilon > 0 && epsilon <= 1, ErrorCode::kMalformedInput,
          "epsilon must lie in (0, 1]");
  require(!bounds.empty(), ErrorCode::kMalformedInput, "no partitions");
  std::size_t rounds = to_size(ceil_rational(Rational(1) / epsilon));
  for (std::size_t bound : bounds) {
    require(bound >= 1, ErrorCode::kMalformedInput, "cardinality bounds must be positive");
    rounds = std::min(rounds, bound);
  }
  std::vector<std::vector<std::size_t>> picks(
      rounds, std::vector<std::size_t>(bounds.size(), 0));
  for (std::size_t j = 0; j < bounds.size(); ++j) {
    const std::size_t base = bounds[j] / rounds;
    const std::size_t extra = bounds[j] % rounds;
    for (std::size_t i = 0; i < rounds; ++i) {
      picks[i][j] = base + (i < extra ? 1 : 0);
    }
  }
  return picks;
}

template <class V>
struct MatroidResult {
  SortedSet chosen;
  V value{};
  std::vector<V> round_values;                     // f after each round
  std::vector<std::vector<std::size_t>> schedule;  // quota per round and partition
};

// Runs the schedule: within each round, partitions are processed in index
// order and each contributes its quota via a unit-size greedy conditioned on
// everything chosen so far. A unit-size bin never overflows, so the greedy
// emits no overflow markers; the output respects every cardinality bound.
template <class V>
MatroidResult<V> solve_partition_matroid(const PartitionMatroidInstance<V>& inst) {
  inst.validate();
  MatroidResult<V> out;
  out.schedule = matroid_schedule(inst.bounds, inst.epsilon);

  Oracle<V>& f = *inst.oracle;
  const std::vector<V> unit_sizes(inst.n, V(1));
  for (const auto& round : out.schedule) {
    for (std::size_t j = 0; j < inst.r(); ++j) {
      if (round[j] == 0) continue;
      const SortedSet fresh = set_difference(inst.partitions[j], out.chosen);
      if (fresh.empty()) continue;
      const auto view = OracleView<V>::conditioned(f, out.chosen);
      const std::vector<V> quota_bin{V(static_cast<long long>(round[j]))};
      GreedyResult<V> picked = greedy(view, fresh, unit_sizes, quota_bin);
      require(picked.packing.reserved.empty(), ErrorCode::kInternalInvariant,
              "unit-size greedy produced an overflow marker");
      for (ElementId u : picked.packing.elements()) {
        set_insert(out.chosen, u);
      }
    }
    out.round_values.push_back(f.evaluate(out.chosen));
  }
  out.value = out.round_values.back();
  return out;
}

// Exact closed form of the final guarantee, defined when 1/epsilon is an
// integer: 1 - (1 + epsilon - epsilon^2/2)^(-1/epsilon).
inline Rational matroid_guarantee(const Rational& epsilon) {
  require(epsilon > 0 && epsilon <= 1, ErrorCode::kMalformedInput,
          "epsilon must lie in (0, 1]");
  const Rational inverse = Rational(1) / epsilon;
  require(den(inverse) == 1, ErrorCode::kMalformedInput,
          "closed-form guarantee needs an integral 1/epsilon");
  const std::size_t exponent = to_size(num(inverse));
  const Rational growth = Rational(1) + epsilon - epsilon * epsilon / 2;
  return Rational(1) - Rational(1) / rational_pow(growth, exponent);
}

// Per-round progress inequality against a known optimum:
// f(T_i) - f(T_{i-1}) >= (eps - eps^2/2) * (opt - f(T_i)) for every round i.
// Exact value types only.
template <class V>
bool check_matroid_recurrence(const std::vector<V>& round_values, const V& opt,
                              const Rational& epsilon) {
  static_assert(ValueTraits<V>::kExact, "guarantee checks are exact-mode only");
  const V rate = ValueTraits<V>::from_rational(epsilon - epsilon * epsilon / 2);
  V previous(0);
  for (const V& current : round_values) {
    if (current - previous < rate * (opt - current)) return false;
    previous = current;
  }
  return true;
}

}  // namespace smkp
