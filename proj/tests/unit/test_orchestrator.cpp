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

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using smkp::BatchConfig;
using smkp::Rational;
using smkp::SolverConfig;
using smkp::SortedSet;
using testsupport::modular_instance;
using testsupport::rationals;

namespace {

SolverConfig desk_config(std::size_t s, unsigned t) {
  return SolverConfig::overrides(
      smkp::make_rational(1, 2), s, t,
      BatchConfig::overrides(smkp::make_rational(1, 2), 1, 1));
}

Rational greedy_floor(const testsupport::RInstance& inst) {
  const auto view = smkp::OracleView<Rational>::whole(*inst.oracle);
  const auto result = smkp::greedy(view, smkp::full_ground(inst.n), inst.sizes,
                                   inst.capacities);
  return smkp::value(inst, smkp::drop_reserved(result.packing));
}

}  // namespace

TEST_CASE("dispatch routes small bin counts to the seed solver",
          "[orchestrator]") {
  const auto narrow = modular_instance({6, 4, 3}, {3, 2, 2}, {4, 2});
  SolverConfig config = desk_config(2, 2);
  const auto routed = smkp::dispatch(narrow, config);
  CHECK(routed.algorithm == "small-m");
  CHECK(routed.value ==
        smkp::small_m_solve(narrow, smkp::SmallMConfig::default_for_bins(2))
            .value);

  const auto wide =
      modular_instance({6, 4, 3, 2}, {3, 2, 2, 1}, {4, 4, 4, 4});
  CHECK(smkp::dispatch(wide, config).algorithm == "final");
}

TEST_CASE("dispatch falls back when the seed enumeration is unaffordable",
          "[orchestrator]") {
  const auto inst = modular_instance({6, 4, 3}, {3, 2, 2}, {4, 2});
  SolverConfig config = desk_config(2, 2);
  // Below the 27 candidates the seed solver would want, above the 19 the
  // final solver needs at s = 2.
  config.candidate_budget = 20;
  const auto routed = smkp::dispatch(inst, config);
  CHECK(routed.algorithm == "final");
  CHECK(smkp::check_feasible(inst, routed.packing, false).ok);
}

TEST_CASE("the final solver is feasible, audited, and above the greedy floor",
          "[orchestrator]") {
  // Identical bins, a seed cap of n, and sizes small enough that the greedy
  // floor is itself an enumerated seed.
  const auto inst = modular_instance({9, 7, 6, 5, 3, 2}, {5, 4, 4, 3, 2, 1},
                                     {8, 8, 8, 8});
  const auto config = desk_config(/*s=*/6, /*t=*/2);
  const auto result = smkp::solve_final(inst, config);

  CHECK(result.packing.reserved.empty());
  CHECK(smkp::check_feasible(inst, result.packing, false).ok);
  CHECK(result.value == smkp::value(inst, result.packing));
  CHECK(result.value >= greedy_floor(inst));
  CHECK(result.seeds > 0);
  CHECK(result.winner_seed < result.seeds);
  CHECK(smkp::feasibility_audit(result.level0, config.epsilon, result.rounds));

  // The winner's seed stays inside the final selection.
  const auto packed = result.packing.elements();
  for (smkp::ElementId u : result.seed_elements) {
    CHECK(smkp::set_contains(packed, u));
  }
}

TEST_CASE("growth rounds accumulate value monotonically", "[orchestrator]") {
  // Tiny elements exist (sizes at or below eps^2 * 8 = 2), so the growth
  // phase engages and leaves a full trace.
  const auto inst = modular_instance({9, 7, 6, 2, 2, 1}, {5, 4, 4, 2, 1, 1},
                                     {8, 8, 8, 8});
  const auto config = desk_config(2, 2);
  const auto result = smkp::solve_final(inst, config);
  CHECK(result.rounds == 2);  // floor(1 / eps)

  if (!result.round_values.empty()) {
    CHECK(result.round_values.size() == result.rounds);
    Rational previous = inst.oracle->evaluate(result.seed_elements);
    for (const Rational& v : result.round_values) {
      CHECK(v >= previous);
      previous = v;
    }
    CHECK(result.value == result.round_values.back());
  }

  if (result.leveled.has_value()) {
    CHECK(smkp::verify_leveled(*result.leveled));
    CHECK(result.block_bins_used.size() == result.leveled->blocks.size());
    for (std::size_t bi = 0; bi < result.leveled->blocks.size(); ++bi) {
      CHECK(result.block_bins_used[bi] <= result.leveled->blocks[bi].bins.size());
      if (result.leveled->blocks[bi].level == 0) {
        CHECK(result.block_bins_used[bi] == 0);  // tracked per round instead
      }
    }
    for (const auto& audit : result.level0) {
      CHECK(audit.round_loads.size() == result.rounds);
      CHECK(audit.rounded_capacity <= audit.residual_capacity);
    }
  }
}

TEST_CASE("the audit rejects corrupted round loads", "[orchestrator]") {
  smkp::Level0Audit<Rational> audit;
  audit.bin = 0;
  audit.residual_capacity = Rational(8);
  audit.rounded_capacity = Rational(8);
  audit.round_loads = rationals({2, 2});
  const Rational eps = smkp::make_rational(1, 2);
  CHECK(smkp::feasibility_audit<Rational>({audit}, eps, 2));

  auto overload = audit;
  overload.round_loads[0] = Rational(5);  // above eps * rounded = 4
  CHECK_FALSE(smkp::feasibility_audit<Rational>({overload}, eps, 2));

  auto inflated = audit;
  inflated.rounded_capacity = Rational(9);  // above what the bin had left
  CHECK_FALSE(smkp::feasibility_audit<Rational>({inflated}, eps, 2));

  auto extra = audit;
  extra.round_loads = rationals({2, 2, 2});  // more rounds than allowed
  CHECK_FALSE(smkp::feasibility_audit<Rational>({extra}, eps, 2));

  auto total = audit;
  total.round_loads = rationals({4, 4, 4});
  CHECK_FALSE(smkp::feasibility_audit<Rational>({total}, eps, 3));
}

TEST_CASE("degenerate instances solve cleanly", "[orchestrator]") {
  testsupport::RInstance empty;
  empty.n = 0;
  empty.capacities = rationals({4, 4, 4, 4});
  empty.oracle = std::make_shared<smkp::ModularOracle<Rational>>(
      std::vector<Rational>{});
  const auto nothing = smkp::solve_final(empty, desk_config(2, 2));
  CHECK(nothing.value == Rational(0));
  CHECK(nothing.packing.elements().empty());

  const auto lone = modular_instance({5}, {3}, {4, 4, 4, 4});
  const auto result = smkp::solve_final(lone, desk_config(1, 2));
  CHECK(result.value == Rational(5));
}

TEST_CASE("the greedy floor holds across generated instances",
          "[orchestrator]") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    smkp::InstanceGenConfig cfg;
    cfg.seed = 900 + seed;
    cfg.n = 5;
    cfg.m = 4;
    cfg.family =
        seed % 3 == 0 ? "concave-over-modular"
                      : (seed % 3 == 1 ? "modular" : "weighted-coverage");
    const auto inst = testsupport::generated_instance(cfg);
    const auto config = desk_config(/*s=*/inst.n, /*t=*/3);
    const auto result = smkp::solve_final(inst, config);
    INFO("seed " << cfg.seed);
    CHECK(smkp::check_feasible(inst, result.packing, false).ok);
    CHECK(result.value >= greedy_floor(inst));
    CHECK(smkp::feasibility_audit(result.level0, config.epsilon,
                                  result.rounds));
  }
}

TEST_CASE("final runs are deterministic across thread counts",
          "[orchestrator]") {
  smkp::InstanceGenConfig cfg;
  cfg.seed = 950;
  cfg.n = 6;
  cfg.m = 4;
  const auto inst = testsupport::generated_instance(cfg);

  auto config_one = desk_config(3, 2);
  config_one.threads = 1;
  auto config_four = desk_config(3, 2);
  config_four.threads = 4;

  const auto one = smkp::solve_final(inst, config_one);
  const auto four = smkp::solve_final(inst, config_four);
  CHECK(one.value == four.value);
  CHECK(one.packing.bin_of == four.packing.bin_of);
  CHECK(one.winner_seed == four.winner_seed);
  CHECK(one.round_values == four.round_values);
}
