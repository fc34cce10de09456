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

#include <random>

#include "test_support.hpp"

using smkp::ErrorCode;
using smkp::Rational;
using testsupport::error_code_of;
using testsupport::modular_instance;
using testsupport::rationals;

TEST_CASE("distinct capacities level into singletons plus a tail block",
          "[leveling]") {
  const auto caps = rationals({10, 9, 8, 7, 6});
  const auto ls = smkp::level_capacities(caps, 2);

  REQUIRE(ls.blocks.size() == 5);
  CHECK(ls.ell == 1);
  CHECK(ls.k == 1);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(ls.blocks[i].level == 0);
    CHECK(ls.blocks[i].index == i);
    REQUIRE(ls.blocks[i].bins.size() == 1);
    CHECK(ls.blocks[i].bins[0] == i);  // largest four, in capacity order
    CHECK(ls.blocks[i].capacity == caps[i]);
  }
  CHECK(ls.blocks[4].level == 1);
  CHECK(ls.blocks[4].bins == std::vector<std::size_t>{4});
  CHECK(ls.blocks[4].capacity == Rational(6));

  // Every block here is a run of one bin, so nothing actually rounds down.
  CHECK(ls.rounded_capacities == caps);
  CHECK(smkp::verify_leveled(ls));
  CHECK(smkp::droppable_block(ls) == std::optional<std::size_t>{4});
}

TEST_CASE("few bins level into singletons only", "[leveling]") {
  const auto ls = smkp::level_capacities(rationals({5, 9, 7}), 2);
  REQUIRE(ls.blocks.size() == 3);
  CHECK(ls.ell == 0);
  CHECK(ls.k == 3);
  // Sorted by capacity descending: bins 1, 2, 0.
  CHECK(ls.blocks[0].bins == std::vector<std::size_t>{1});
  CHECK(ls.blocks[1].bins == std::vector<std::size_t>{2});
  CHECK(ls.blocks[2].bins == std::vector<std::size_t>{0});
  CHECK(smkp::droppable_block(ls) == std::nullopt);
  CHECK(smkp::verify_leveled(ls));
}

TEST_CASE("a fully consumed level leaves an empty top block", "[leveling]") {
  const auto ls = smkp::level_capacities(rationals({4, 4, 4, 4}), 2);
  REQUIRE(ls.blocks.size() == 5);
  CHECK(ls.ell == 1);
  CHECK(ls.k == 1);
  CHECK(ls.blocks[4].level == 1);
  CHECK(ls.blocks[4].bins.empty());
  CHECK(ls.blocks[4].capacity == Rational(0));
  CHECK(smkp::verify_leveled(ls));
  CHECK(smkp::droppable_block(ls) == std::optional<std::size_t>{4});
}

TEST_CASE("equal capacities round to themselves", "[leveling]") {
  const auto caps = rationals({7, 7, 7, 7, 7, 7});
  const auto ls = smkp::level_capacities(caps, 2);
  CHECK(ls.rounded_capacities == caps);
  CHECK(smkp::verify_leveled(ls));
}

TEST_CASE("deeper levels group runs of t^i bins", "[leveling]") {
  std::vector<Rational> caps;
  for (int i = 0; i < 30; ++i) caps.emplace_back(100 - i);
  const auto ls = smkp::level_capacities(caps, 3);

  REQUIRE(ls.blocks.size() == 16);  // 9 singletons + 7 triples
  CHECK(ls.ell == 1);
  CHECK(ls.k == 7);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(ls.blocks[i].level == 0);
    CHECK(ls.blocks[i].bins.size() == 1);
  }
  for (std::size_t i = 9; i < 16; ++i) {
    CHECK(ls.blocks[i].level == 1);
    CHECK(ls.blocks[i].bins.size() == 3);
    // Block-minimum rounding: the smallest capacity of the run wins.
    CHECK(ls.blocks[i].capacity == caps[ls.blocks[i].bins.back()]);
  }
  CHECK(smkp::verify_leveled(ls));
}

TEST_CASE("random capacity vectors always verify", "[leveling]") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng() % 30;
    const unsigned t = 2 + rng() % 2;
    std::vector<Rational> caps;
    for (std::size_t j = 0; j < m; ++j) {
      caps.push_back(smkp::make_rational(1 + rng() % 40, 1 + rng() % 4));
    }
    const auto ls = smkp::level_capacities(caps, t);
    INFO("trial " << trial << " m " << m << " t " << t);
    REQUIRE(smkp::verify_leveled(ls));
    for (std::size_t j = 0; j < m; ++j) {
      CHECK(ls.rounded_capacities[j] <= caps[j]);
      CHECK(ls.rounded_capacities[j] > Rational(0));
    }
  }
}

TEST_CASE("the verifier catches corrupted structures", "[leveling]") {
  const auto caps = rationals({10, 9, 8, 7, 6});
  auto ls = smkp::level_capacities(caps, 2);
  REQUIRE(smkp::verify_leveled(ls));

  auto inflated = ls;
  inflated.blocks[4].capacity = Rational(11);  // above the original capacity
  inflated.rounded_capacities[4] = Rational(11);
  CHECK_FALSE(smkp::verify_leveled(inflated));

  auto reordered = ls;
  std::swap(reordered.blocks[0], reordered.blocks[1]);
  CHECK_FALSE(smkp::verify_leveled(reordered));

  auto wrong_k = ls;
  wrong_k.k = 2;
  CHECK_FALSE(smkp::verify_leveled(wrong_k));

  auto mismatched = ls;
  mismatched.rounded_capacities[0] = Rational(1);
  CHECK_FALSE(smkp::verify_leveled(mismatched));
}

TEST_CASE("leveling parameters are validated", "[leveling]") {
  CHECK(error_code_of([] { smkp::level_capacities<Rational>({}, 2); }) ==
        ErrorCode::kMalformedInput);
  CHECK(error_code_of(
            [] { smkp::level_capacities(rationals({1}), 1); }) ==
        ErrorCode::kMalformedInput);
  CHECK(error_code_of([] {
          smkp::level_capacities(rationals({0}), 2);
        }) == ErrorCode::kMalformedInput);
}

TEST_CASE("leveling keeps at least a 1 - 1/t value fraction", "[leveling]") {
  // Identical capacities: nothing rounds, nothing worth dropping exists
  // below the top level, so the retained ratio is exactly one.
  const auto identical = modular_instance({5, 4, 3}, {2, 2, 2}, {4, 4, 4});
  const auto no_loss = smkp::estimate_leveling_loss(identical, 2);
  CHECK(no_loss.opt_original == no_loss.opt_leveled);
  CHECK(no_loss.ratio == Rational(1));
  CHECK(no_loss.bound_holds);

  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    smkp::InstanceGenConfig cfg;
    cfg.seed = 400 + seed;
    cfg.n = 5;
    cfg.m = 2 + seed % 4;
    cfg.family = seed % 2 == 0 ? "modular" : "weighted-coverage";
    const auto inst = testsupport::generated_instance(cfg);
    for (unsigned t : {2u, 3u}) {
      const auto loss = smkp::estimate_leveling_loss(inst, t);
      INFO("seed " << cfg.seed << " t " << t);
      CHECK(loss.opt_leveled <= loss.opt_original);
      CHECK(loss.bound_holds);
      if (loss.opt_original > Rational(0)) {
        CHECK(loss.ratio >= Rational(1) - Rational(1) / Rational(t));
      }
    }
  }
}
