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

using smkp::ErrorCode;
using smkp::Packing;
using smkp::Rational;
using smkp::SortedSet;
using testsupport::error_code_of;
using testsupport::modular_instance;
using testsupport::rationals;

TEST_CASE("value depends on the packed set, not the bin split", "[instance]") {
  const auto inst = modular_instance({6, 4}, {1, 1}, {10, 10});
  Packing together = Packing::empty(2);
  together.bin_of = {1, 1};
  Packing apart = Packing::empty(2);
  apart.bin_of = {1, 2};
  CHECK(smkp::value(inst, together) == Rational(10));
  CHECK(smkp::value(inst, apart) == Rational(10));

  Packing partial = Packing::empty(2);
  partial.bin_of = {1, 0};
  CHECK(smkp::value(inst, partial) == Rational(6));
  CHECK(smkp::value(inst, Packing::empty(2)) == Rational(0));
}

TEST_CASE("coverage instances score packed sets", "[instance]") {
  testsupport::RInstance inst;
  inst.n = 3;
  inst.sizes = rationals({1, 1, 1});
  inst.capacities = rationals({2, 2});
  inst.oracle = testsupport::coverage_oracle_abc();
  Packing p = Packing::empty(3);
  p.bin_of = {1, 2, 0};
  CHECK(smkp::value(inst, p) == Rational(3));
}

TEST_CASE("used_bins counts nonempty bins", "[instance]") {
  Packing p = Packing::empty(3);
  p.bin_of = {1, 1, 3};
  CHECK(smkp::used_bins(p) == 2);
  CHECK(smkp::used_bins(Packing::empty(3)) == 0);
}

TEST_CASE("feasibility honors reserved markers", "[instance]") {
  const auto inst = modular_instance({5, 5}, {3, 2}, {4});
  Packing p = Packing::empty(2);
  p.bin_of = {1, 1};         // load 5 over capacity 4
  p.reserved = {{1, 1}};     // element 1 may overflow bin 1

  CHECK(smkp::check_feasible(inst, p, /*allow_reserved=*/true).ok);

  const auto strict = smkp::check_feasible(inst, p, /*allow_reserved=*/false);
  CHECK_FALSE(strict.ok);
  REQUIRE(strict.violations.size() == 1);
  CHECK(strict.violations[0].first == 1);
  CHECK(strict.violations[0].second == Rational(1));

  CHECK(smkp::check_feasible(inst, Packing::empty(2), true).ok);
  CHECK(smkp::check_feasible(inst, Packing::empty(2), false).ok);
}

TEST_CASE("feasibility validates packing structure", "[instance]") {
  const auto inst = modular_instance({5, 5}, {1, 1}, {4});

  Packing out_of_range = Packing::empty(2);
  out_of_range.bin_of = {2, 0};  // the instance has one bin
  CHECK(error_code_of([&] { smkp::check_feasible(inst, out_of_range, true); }) ==
        ErrorCode::kInvalidBin);

  Packing dangling = Packing::empty(2);
  dangling.reserved = {{0, 1}};  // marker without an assignment
  CHECK(error_code_of([&] { smkp::check_feasible(inst, dangling, true); }) ==
        ErrorCode::kInternalInvariant);

  Packing doubled = Packing::empty(2);
  doubled.bin_of = {1, 1};
  doubled.reserved = {{0, 1}, {1, 1}};  // two markers in one bin
  CHECK(error_code_of([&] { smkp::check_feasible(inst, doubled, true); }) ==
        ErrorCode::kInternalInvariant);

  CHECK(error_code_of([&] {
          smkp::check_feasible(inst, Packing::empty(5), true);
        }) == ErrorCode::kMalformedInput);
}

TEST_CASE("drop_reserved restores strict feasibility", "[instance]") {
  const auto inst = modular_instance({5, 5}, {3, 2}, {4});
  Packing p = Packing::empty(2);
  p.bin_of = {1, 1};
  p.reserved = {{1, 1}};

  const Packing dropped = smkp::drop_reserved(p);
  CHECK(dropped.bin_of == std::vector<std::int32_t>{1, 0});
  CHECK(dropped.reserved.empty());
  CHECK(dropped.elements() == SortedSet{0});
  CHECK(smkp::check_feasible(inst, dropped, /*allow_reserved=*/false).ok);
}

TEST_CASE("FeasiblePacking accepts only strict feasibility", "[instance]") {
  const auto inst = modular_instance({5, 5}, {3, 2}, {4});

  Packing good = Packing::empty(2);
  good.bin_of = {1, 0};
  CHECK(smkp::FeasiblePacking::checked(inst, good).packing.bin_of ==
        std::vector<std::int32_t>{1, 0});

  Packing marked = Packing::empty(2);
  marked.bin_of = {1, 1};
  marked.reserved = {{1, 1}};
  CHECK(error_code_of([&] { smkp::FeasiblePacking::checked(inst, marked); }) ==
        ErrorCode::kInternalInvariant);

  Packing overfull = Packing::empty(2);
  overfull.bin_of = {1, 1};
  CHECK(error_code_of([&] { smkp::FeasiblePacking::checked(inst, overfull); }) ==
        ErrorCode::kInternalInvariant);
}

TEST_CASE("validate rejects malformed instances", "[instance]") {
  auto inst = modular_instance({5, 5}, {1, 1}, {4});
  inst.validate();

  auto no_oracle = inst;
  no_oracle.oracle = nullptr;
  CHECK(error_code_of([&] { no_oracle.validate(); }) ==
        ErrorCode::kMalformedInput);

  auto mismatch = inst;
  mismatch.n = 3;
  CHECK(error_code_of([&] { mismatch.validate(); }) ==
        ErrorCode::kMalformedInput);

  auto zero_size = inst;
  zero_size.sizes[0] = Rational(0);
  CHECK(error_code_of([&] { zero_size.validate(); }) ==
        ErrorCode::kMalformedInput);

  auto no_bins = inst;
  no_bins.capacities.clear();
  CHECK(error_code_of([&] { no_bins.validate(); }) ==
        ErrorCode::kMalformedInput);

  auto zero_cap = inst;
  zero_cap.capacities[0] = Rational(0);
  CHECK(error_code_of([&] { zero_cap.validate(); }) ==
        ErrorCode::kMalformedInput);
}

TEST_CASE("size_of sums over a set", "[instance]") {
  const auto inst = modular_instance({1, 1, 1}, {3, 2, 5}, {10});
  CHECK(inst.size_of(SortedSet{0, 2}) == Rational(8));
  CHECK(inst.size_of(SortedSet{}) == Rational(0));
  CHECK(inst.m() == 1);
}

TEST_CASE("packing helpers report membership", "[instance]") {
  Packing p = Packing::empty(4);
  p.bin_of = {1, 0, 2, 2};
  p.reserved = {{3, 2}};
  CHECK(p.elements() == SortedSet{0, 2, 3});
  CHECK(p.bin_elements(2) == SortedSet{2, 3});
  CHECK(p.is_reserved(3));
  CHECK_FALSE(p.is_reserved(2));
  CHECK(p.packed_count() == 3);
}
