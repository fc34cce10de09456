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
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "smkp/core.hpp"
#include "smkp/enumeration.hpp"
#include "smkp/errors.hpp"
#include "smkp/greedy.hpp"
#include "smkp/identical.hpp"
#include "smkp/instance.hpp"
#include "smkp/leveling.hpp"
#include "smkp/oracle.hpp"
#include "smkp/parallel.hpp"
#include "smkp/rational.hpp"
#include "smkp/small_m.hpp"

namespace smkp {

// Top-level solver: enumerate small seed packings, level the leftover
// capacities into uniform blocks, and grow each seed over a fixed number of
// rounds. Singleton blocks take a slice of greedy-chosen tiny elements per
// round; larger blocks hand a few fresh bins per round to the
// identical-capacity batch solver. The best-grown seed wins.

struct SolverConfig {
  Rational epsilon = Rational(1, 2);  // in (0,1)
  std::size_t s = 2;                  // seed size cap
  unsigned t = 2;                     // leveling parameter
  BatchConfig batch;                  // forwarded to the identical-bin solver
  std::uint64_t candidate_budget = 2000000;
  unsigned threads = 1;
  std::size_t small_m_threshold = 3;  // dispatch: bin count for the seed solver
  bool guaranteed = false;

  // Parameters from the approximation analysis: s = ceil(eps^-21 / 4),
  // t = ceil(4 / eps^9), guarantee-grade batches. Astronomical for small
  // epsilon; runs refuse politely when the enumeration exceeds the budget.
  static SolverConfig guarantee_grade(const Rational& epsilon) {
    require(epsilon > 0 && epsilon < 1, ErrorCode::kMalformedInput,
            "epsilon must lie strictly between 0 and 1");
    SolverConfig config;
    config.epsilon = epsilon;
    config.s = to_size(ceil_rational(Rational(1) / (rational_pow(epsilon, 21) * 4)));
    const BigInt t_big = ceil_rational(Rational(4) / rational_pow(epsilon, 9));
    require(t_big <= BigInt(1u << 16), ErrorCode::kSizeLimit,
            "guarantee-grade t does not fit the leveling limit");
    config.t = static_cast<unsigned>(to_size(t_big));
    config.batch = BatchConfig::guarantee_grade(epsilon);
    config.guaranteed = true;
    return config;
  }

  static SolverConfig overrides(const Rational& epsilon, std::size_t s, unsigned t,
                                const BatchConfig& batch) {
    require(epsilon > 0 && epsilon < 1, ErrorCode::kMalformedInput,
            "epsilon must lie strictly between 0 and 1");
    require(t >= 2, ErrorCode::kMalformedInput, "leveling needs t of at least 2");
    SolverConfig config;
    config.epsilon = epsilon;
    config.s = s;
    config.t = t;
    config.batch = batch;
    config.guaranteed = false;
    return config;
  }
};

template <class V>
struct Level0Audit {
  std::size_t bin = 0;      // original bin position, 0-based
  V residual_capacity{};    // capacity left after the winning seed
  V rounded_capacity{};     // leveled capacity of the singleton block
  std::vector<V> round_loads;  // load the bin gained in each round
};

template <class V>
struct FinalResult {
  V value{};
  Packing packing;  // strictly feasible against the original capacities
  std::uint64_t seeds = 0;
  std::uint64_t winner_seed = 0;
  SortedSet seed_elements;
  std::size_t rounds = 0;
  std::optional<LeveledStructure<V>> leveled;  // winner's leveled residuals
  std::vector<V> round_values;                 // f(seed + growth) after each round
  std::vector<Level0Audit<V>> level0;
  std::vector<std::size_t> block_bins_used;  // per block of the leveled structure
};

// Capacity-chain audit for the singleton-block rounds: each round's load may
// reach the round allowance (eps - eps^2) * cap plus one overflow element of
// size at most eps^2 * cap, so it must stay within eps * cap; the rounds
// together must stay within the rounded capacity, which never exceeds what
// the bin really had left. Returns whether every link of that chain holds.
template <class V>
bool feasibility_audit(const std::vector<Level0Audit<V>>& audits,
                       const Rational& epsilon, std::size_t rounds) {
  const V per_round_cap_factor = ValueTraits<V>::from_rational(epsilon);
  for (const auto& audit : audits) {
    if (audit.rounded_capacity > audit.residual_capacity) return false;
    if (audit.round_loads.size() > rounds) return false;
    V total(0);
    for (const V& load : audit.round_loads) {
      if (load > per_round_cap_factor * audit.rounded_capacity) return false;
      total += load;
    }
    if (total > audit.rounded_capacity) return false;
  }
  return true;
}

namespace detail {

// One seed, grown to a full candidate. Audit and trace data are only
// collected when `report` is set; the packing and value never depend on it.
template <class V>
std::pair<V, Packing> grow_seed(const Instance<V>& inst, const SolverConfig& config,
                                const Packing& seed,
                                std::type_identity_t<FinalResult<V>*> report) {
  Oracle<V>& f = *inst.oracle;
  const SortedSet base = seed.elements();
  const V seed_value = f.evaluate(base);
  const std::size_t rounds =
      to_size(floor_rational(Rational(1) / config.epsilon));

  Packing out = seed;
  SortedSet packed = base;
  std::vector<V> loads(inst.m(), V(0));
  for (std::size_t u = 0; u < inst.n; ++u) {
    const std::int32_t b = seed.bin_of[u];
    if (b > 0) loads[static_cast<std::size_t>(b - 1)] += inst.sizes[u];
  }

  // Bins with leftover space, and their leftovers.
  std::vector<std::size_t> kept;
  std::vector<V> residuals;
  for (std::size_t j = 0; j < inst.m(); ++j) {
    const V left = inst.capacities[j] - loads[j];
    if (left > V(0)) {
      kept.push_back(j);
      residuals.push_back(left);
    }
  }

  // Elements eligible for growth: outside the seed, conditional marginal at
  // most f(seed)/s. A zero-value seed filters nothing.
  const V s_value = ValueTraits<V>::from_rational(Rational(BigInt(config.s)));
  SortedSet eligible;
  for (ElementId u = 0; u < inst.n; ++u) {
    if (set_contains(base, u)) continue;
    if (seed_value > V(0) && f.marginal(u, base) * s_value > seed_value) continue;
    eligible.push_back(u);
  }

  if (report != nullptr) {
    report->seed_elements = base;
    report->rounds = rounds;
  }

  if (kept.empty() || eligible.empty() || rounds == 0) {
    const V value = f.evaluate(packed);
    if (report != nullptr) report->value = value;
    return {value, std::move(out)};
  }

  const LeveledStructure<V> ls = level_capacities(residuals, config.t);
  const std::optional<std::size_t> dropped = droppable_block(ls);
  std::vector<std::size_t> consumed(ls.blocks.size(), 0);

  const V small_factor =
      ValueTraits<V>::from_rational(config.epsilon * config.epsilon);
  const V round_factor = ValueTraits<V>::from_rational(
      config.epsilon - config.epsilon * config.epsilon);
  const Rational per_round_share = config.epsilon;  // ceil(eps * block size) bins

  std::vector<Level0Audit<V>> audits;
  std::vector<std::size_t> singleton_audit_index(ls.blocks.size(), 0);
  if (report != nullptr) {
    for (std::size_t bi = 0; bi < ls.blocks.size(); ++bi) {
      if (ls.blocks[bi].level != 0) continue;
      singleton_audit_index[bi] = audits.size();
      Level0Audit<V> audit;
      audit.bin = kept[ls.blocks[bi].bins[0]];
      audit.residual_capacity = residuals[ls.blocks[bi].bins[0]];
      audit.rounded_capacity = ls.blocks[bi].capacity;
      audits.push_back(std::move(audit));
    }
  }

  std::vector<V> round_values;
  for (std::size_t round = 0; round < rounds; ++round) {
    for (std::size_t bi = 0; bi < ls.blocks.size(); ++bi) {
      if (dropped && *dropped == bi) continue;
      const Block<V>& block = ls.blocks[bi];

      if (block.level == 0) {
        const std::size_t bin = kept[block.bins[0]];
        const V size_cap = small_factor * block.capacity;
        SortedSet tiny;
        for (ElementId u : eligible) {
          if (set_contains(packed, u)) continue;
          if (inst.sizes[u] > size_cap) continue;
          tiny.push_back(u);
        }
        V round_load(0);
        if (!tiny.empty()) {
          const auto view = OracleView<V>::conditioned(f, packed);
          const std::vector<V> allowance{round_factor * block.capacity};
          GreedyResult<V> grown = greedy(view, tiny, inst.sizes, allowance);
          // Overflow markers stay put: the audit chain keeps the bin sound.
          for (ElementId u : grown.packing.elements()) {
            out.bin_of[u] = static_cast<std::int32_t>(bin + 1);
            loads[bin] += inst.sizes[u];
            set_insert(packed, u);
          }
          round_load = grown.bin_loads[0];
        }
        if (report != nullptr) {
          audits[singleton_audit_index[bi]].round_loads.push_back(round_load);
        }
        continue;
      }

      const std::size_t block_bins = block.bins.size();
      if (consumed[bi] >= block_bins) continue;
      const std::size_t share = to_size(ceil_rational(
          per_round_share * Rational(BigInt(block_bins))));
      const std::size_t take = std::min(share, block_bins - consumed[bi]);
      std::vector<std::size_t> fresh(block.bins.begin() + consumed[bi],
                                     block.bins.begin() + consumed[bi] + take);
      consumed[bi] += take;

      const SortedSet open = set_difference(eligible, packed);
      if (open.empty()) continue;
      const auto view = OracleView<V>::conditioned(f, packed);
      IdenticalCaseResult<V> grown =
          identical_case(view, open, inst.sizes, take, block.capacity, config.batch,
                         config.candidate_budget, /*threads=*/1);
      for (ElementId u : grown.packing.elements()) {
        const std::size_t local = static_cast<std::size_t>(grown.packing.bin_of[u] - 1);
        const std::size_t bin = kept[fresh[local]];
        out.bin_of[u] = static_cast<std::int32_t>(bin + 1);
        loads[bin] += inst.sizes[u];
        set_insert(packed, u);
      }
    }
    round_values.push_back(f.evaluate(packed));
  }

  const V value = round_values.back();
  if (report != nullptr) {
    report->value = value;
    report->leveled = ls;
    report->round_values = std::move(round_values);
    report->level0 = std::move(audits);
    report->block_bins_used = std::move(consumed);
  }
  return {value, std::move(out)};
}

}  // namespace detail

template <class V>
FinalResult<V> solve_final(const Instance<V>& inst, const SolverConfig& config) {
  inst.validate();
  require(config.epsilon > 0 && config.epsilon < 1, ErrorCode::kMalformedInput,
          "epsilon must lie strictly between 0 and 1");
  require(config.t >= 2, ErrorCode::kMalformedInput, "leveling needs t of at least 2");

  std::vector<Packing> seeds;
  enumerate_bounded_packings<V>(full_ground(inst.n), inst.sizes, inst.capacities,
                                config.s, config.candidate_budget,
                                [&seeds](const Packing& p, std::uint64_t) {
                                  seeds.push_back(p);
                                  return true;
                                });

  using Payload = std::uint64_t;  // seed index; packings are regrown on demand
  auto eval = [&](std::size_t i) -> std::optional<std::pair<V, Payload>> {
    auto grown = detail::grow_seed(inst, config, seeds[i], nullptr);
    return std::make_pair(std::move(grown.first), static_cast<Payload>(i));
  };
  auto best = parallel_best<V, Payload>(seeds.size(), config.threads, eval);
  require(best.has_value(), ErrorCode::kInternalInvariant,
          "seed enumeration produced no candidate");

  // Re-grow the winner to collect the trace; same seed, same outcome.
  FinalResult<V> out;
  auto grown = detail::grow_seed(inst, config, seeds[best->second], &out);
  out.packing = std::move(grown.second);
  out.seeds = seeds.size();
  out.winner_seed = best->second;

  require(out.packing.reserved.empty(), ErrorCode::kInternalInvariant,
          "final packing cannot carry overflow markers");
  const auto report = check_feasible(inst, out.packing, /*allow_reserved=*/false);
  require(report.ok, ErrorCode::kInternalInvariant,
          "final packing violates a bin capacity");
  require(feasibility_audit(out.level0, config.epsilon, out.rounds),
          ErrorCode::kInternalInvariant, "round capacity chain violated");
  return out;
}

template <class V>
struct DispatchResult {
  std::string algorithm;  // "small-m" or "final"
  V value{};
  Packing packing;
};

// Routing: few bins with an affordable seed enumeration go to the seed
// solver at its default delta; everything else goes to solve_final.
template <class V>
DispatchResult<V> dispatch(const Instance<V>& inst, const SolverConfig& config) {
  inst.validate();
  if (inst.m() <= config.small_m_threshold) {
    SmallMConfig small = SmallMConfig::default_for_bins(inst.m());
    small.candidate_budget = config.candidate_budget;
    small.threads = config.threads;
    const BigInt bound = small_m_candidate_bound(inst, small.delta);
    if (bound <= BigInt(config.candidate_budget)) {
      auto result = small_m_solve(inst, small);
      return DispatchResult<V>{"small-m", std::move(result.value),
                               std::move(result.packing)};
    }
  }
  auto result = solve_final(inst, config);
  return DispatchResult<V>{"final", std::move(result.value), std::move(result.packing)};
}

}  // namespace smkp
