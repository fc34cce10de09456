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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "smkp/core.hpp"
#include "smkp/enumeration.hpp"
#include "smkp/errors.hpp"
#include "smkp/greedy.hpp"
#include "smkp/instance.hpp"
#include "smkp/oracle.hpp"
#include "smkp/parallel.hpp"
#include "smkp/rational.hpp"

namespace smkp {

// Enumeration-plus-greedy solver intended for small bin counts. Every feasible
// placement of at most floor(1/delta) elements is tried as a seed; elements
// whose conditional marginal exceeds delta times the seed value are set aside
// (the enumeration already covers them), and the density greedy fills the
// remaining capacity. The best completed seed wins.
struct SmallMConfig {
  // Marginal threshold; also bounds the seed size at floor(1/delta).
  Rational delta = Rational(1, 5);
  // Upper bound on the number of enumerated seeds before refusing to run.
  std::uint64_t candidate_budget = 2000000;
  unsigned threads = 1;

  // delta = 1 / (e * m), taken slightly small so the seed size floor(1/delta)
  // matches the intended floor(e * m).
  static SmallMConfig default_for_bins(std::size_t m) {
    SmallMConfig config;
    config.delta = Rational(1) / (e_ub() * Rational(BigInt(m)));
    return config;
  }
};

template <class V>
struct SmallMResult {
  V value{};
  Packing packing;
  std::uint64_t candidates = 0;
  std::uint64_t winner_index = 0;
};

template <class V>
SmallMResult<V> small_m_solve(const Instance<V>& inst, const SmallMConfig& config) {
  inst.validate();
  require(config.delta > 0, ErrorCode::kMalformedInput, "delta must be positive");
  const std::size_t seed_cap = to_size(floor_rational(Rational(1) / config.delta));

  std::vector<Packing> seeds;
  const SortedSet ground = full_ground(inst.n);
  enumerate_bounded_packings<V>(ground, inst.sizes, inst.capacities, seed_cap,
                                config.candidate_budget,
                                [&seeds](const Packing& p, std::uint64_t) {
                                  seeds.push_back(p);
                                  return true;
                                });

  Oracle<V>& f = *inst.oracle;
  using Payload = std::pair<Packing, std::uint64_t>;
  auto eval = [&](std::size_t i) -> std::optional<std::pair<V, Payload>> {
    const Packing& seed = seeds[i];
    const SortedSet base = seed.elements();
    const V base_value = f.evaluate(base);

    std::vector<V> residual = inst.capacities;
    for (std::size_t u = 0; u < inst.n; ++u) {
      const std::int32_t b = seed.bin_of[u];
      if (b > 0) residual[static_cast<std::size_t>(b - 1)] -= inst.sizes[u];
    }

    // Elements kept for the greedy phase. When the seed has value zero the
    // threshold filter is vacuous and everything stays eligible.
    const V threshold = ValueTraits<V>::from_rational(config.delta) * base_value;
    SortedSet eligible;
    for (ElementId u = 0; u < inst.n; ++u) {
      if (set_contains(base, u)) continue;
      if (base_value > V(0) && f.marginal(u, base) > threshold) continue;
      eligible.push_back(u);
    }

    const auto view = OracleView<V>::conditioned(f, base);
    GreedyResult<V> filled = greedy(view, eligible, inst.sizes, residual);
    const Packing cleaned = drop_reserved(filled.packing);

    Packing merged = seed;
    for (ElementId u : cleaned.elements()) {
      merged.bin_of[u] = cleaned.bin_of[u];
    }
    const V total = f.evaluate(merged.elements());
    return std::make_pair(total, Payload(std::move(merged), i));
  };

  auto best = parallel_best<V, Payload>(seeds.size(), config.threads, eval);
  require(best.has_value(), ErrorCode::kInternalInvariant,
          "seed enumeration produced no candidate");

  SmallMResult<V> out;
  out.value = std::move(best->first);
  out.packing = std::move(best->second.first);
  out.candidates = seeds.size();
  out.winner_index = best->second.second;
  return out;
}

// Seed count the solver would enumerate, for dispatch decisions.
template <class V>
BigInt small_m_candidate_bound(const Instance<V>& inst, const Rational& delta) {
  require(delta > 0, ErrorCode::kMalformedInput, "delta must be positive");
  const std::size_t seed_cap = to_size(floor_rational(Rational(1) / delta));
  return bounded_packing_bound(inst.n, inst.m(), seed_cap);
}

}  // namespace smkp
