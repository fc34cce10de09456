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

using smkp::BigInt;
using smkp::ErrorCode;
using smkp::Rational;
using smkp::SmallMConfig;
using testsupport::error_code_of;
using testsupport::modular_instance;

TEST_CASE("the default delta tracks the bin count", "[small-m]") {
  const auto config = SmallMConfig::default_for_bins(2);
  CHECK(config.delta == Rational(1) / (smkp::e_ub() * Rational(2)));
  CHECK(config.delta == smkp::make_rational(50000, 271829));
  // floor(1/delta) = floor(2e) = 5 candidate seed elements.
  CHECK(smkp::floor_rational(Rational(1) / config.delta) == BigInt(5));
}

TEST_CASE("seed enumeration recovers the optimum when it is small",
          "[small-m]") {
  // With n = 5 every feasible set fits under the seed cap of 5, so the
  // optimum itself is enumerated and the winner must match it.
  const char* families[] = {"modular", "weighted-coverage",
                            "concave-over-modular"};
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    smkp::InstanceGenConfig cfg;
    cfg.seed = 100 + seed;
    cfg.n = 5;
    cfg.m = 2;
    cfg.family = families[seed % 3];
    const auto inst = testsupport::generated_instance(cfg);

    const auto result =
        smkp::small_m_solve(inst, SmallMConfig::default_for_bins(inst.m()));
    const auto exact = smkp::exact_solve(inst);
    INFO("seed " << cfg.seed << " family " << cfg.family);
    CHECK(result.value == exact.value);
    CHECK(result.value == smkp::value(inst, result.packing));
  }
}

TEST_CASE("outputs are strictly feasible and beat the greedy floor",
          "[small-m]") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    smkp::InstanceGenConfig cfg;
    cfg.seed = 200 + seed;
    cfg.n = 7;
    cfg.m = 2;
    cfg.family = seed % 2 == 0 ? "modular" : "weighted-coverage";
    const auto inst = testsupport::generated_instance(cfg);

    const auto result =
        smkp::small_m_solve(inst, SmallMConfig::default_for_bins(inst.m()));
    CHECK(result.packing.reserved.empty());
    CHECK(smkp::check_feasible(inst, result.packing, false).ok);

    // The empty seed grows into the reserved-dropped greedy packing, so the
    // winner can never fall below that baseline.
    const auto view = smkp::OracleView<Rational>::whole(*inst.oracle);
    const auto baseline = smkp::greedy(view, smkp::full_ground(inst.n),
                                       inst.sizes, inst.capacities);
    const auto floor_packing = smkp::drop_reserved(baseline.packing);
    INFO("seed " << cfg.seed);
    CHECK(result.value >= smkp::value(inst, floor_packing));
  }
}

TEST_CASE("the saturation guarantee holds at the default delta", "[small-m]") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    smkp::InstanceGenConfig cfg;
    cfg.seed = 300 + seed;
    cfg.n = 7;
    cfg.m = 2;
    cfg.family = seed % 2 == 0 ? "concave-over-modular" : "modular";
    const auto inst = testsupport::generated_instance(cfg);

    const auto result =
        smkp::small_m_solve(inst, SmallMConfig::default_for_bins(inst.m()));
    const auto exact = smkp::exact_solve(inst);
    INFO("seed " << cfg.seed);
    CHECK(result.value >= smkp::one_minus_inv_e_lb() * exact.value);
  }
}

TEST_CASE("an empty ground set solves to zero", "[small-m]") {
  testsupport::RInstance inst;
  inst.n = 0;
  inst.capacities = testsupport::rationals({4, 4});
  inst.oracle = std::make_shared<smkp::ModularOracle<Rational>>(
      std::vector<Rational>{});
  const auto result = smkp::small_m_solve(inst, SmallMConfig::default_for_bins(2));
  CHECK(result.value == Rational(0));
  CHECK(result.packing.elements().empty());
}

TEST_CASE("candidate accounting matches the enumeration", "[small-m]") {
  const auto inst = modular_instance({6, 4, 3}, {3, 2, 2}, {4, 2});
  SmallMConfig config;
  config.delta = smkp::make_rational(1, 3);  // seed cap 3 covers everything

  std::uint64_t expected = 0;
  smkp::enumerate_bounded_packings<Rational>(
      smkp::full_ground(inst.n), inst.sizes, inst.capacities, 3, 1000000,
      [&expected](const smkp::Packing&, std::uint64_t) {
        ++expected;
        return true;
      });

  const auto result = smkp::small_m_solve(inst, config);
  CHECK(result.candidates == expected);
  CHECK(result.winner_index < result.candidates);
  CHECK(result.value == smkp::exact_solve(inst).value);
}

TEST_CASE("the candidate bound predicts the enumeration size", "[small-m]") {
  const auto inst = modular_instance({1, 1, 1, 1}, {1, 1, 1, 1}, {4, 4});
  CHECK(smkp::small_m_candidate_bound(inst, smkp::make_rational(1, 2)) ==
        smkp::bounded_packing_bound(4, 2, 2));

  SmallMConfig tiny;
  tiny.delta = smkp::make_rational(1, 2);
  tiny.candidate_budget = 2;
  CHECK(error_code_of([&] { smkp::small_m_solve(inst, tiny); }) ==
        ErrorCode::kResourceLimit);

  SmallMConfig bad;
  bad.delta = Rational(0);
  CHECK(error_code_of([&] { smkp::small_m_solve(inst, bad); }) ==
        ErrorCode::kMalformedInput);
}
