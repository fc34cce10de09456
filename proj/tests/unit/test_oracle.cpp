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

using smkp::ElementId;
using smkp::ErrorCode;
using smkp::Rational;
using smkp::SortedSet;
using testsupport::error_code_of;
using testsupport::rationals;

namespace {

// Monotone and normalized but supermodular; later elements gain more.
class SquaredCardinalityOracle : public smkp::Oracle<Rational> {
 public:
  explicit SquaredCardinalityOracle(std::size_t n) : Oracle<Rational>(n) {}

 protected:
  Rational evaluate_sorted(std::span<const ElementId> set) const override {
    const long long k = static_cast<long long>(set.size());
    return Rational(k * k);
  }
};

// Normalized but not monotone; singletons beat every larger set.
class SingletonSpikeOracle : public smkp::Oracle<Rational> {
 public:
  explicit SingletonSpikeOracle(std::size_t n) : Oracle<Rational>(n) {}

 protected:
  Rational evaluate_sorted(std::span<const ElementId> set) const override {
    return set.size() == 1 ? Rational(1) : Rational(0);
  }
};

}  // namespace

TEST_CASE("modular oracle sums weights", "[oracle]") {
  smkp::ModularOracle<Rational> f(rationals({6, 4, 3}));
  CHECK(f.evaluate(SortedSet{0, 2}) == Rational(9));
  CHECK(f.evaluate(SortedSet{}) == Rational(0));
  CHECK(f.evaluate(SortedSet{0, 1, 2}) == Rational(13));
  CHECK(f.marginal(1, SortedSet{0}) == Rational(4));
  CHECK(f.marginal(0, SortedSet{0}) == Rational(0));
}

TEST_CASE("evaluate canonicalizes order and duplicates", "[oracle]") {
  smkp::ModularOracle<Rational> f(rationals({6, 4, 3}));
  const std::vector<ElementId> backwards{2, 0};
  const std::vector<ElementId> doubled{0, 0, 2};
  CHECK(f.evaluate(backwards) == Rational(9));
  CHECK(f.evaluate(doubled) == Rational(9));
}

TEST_CASE("weighted coverage counts each point once", "[oracle]") {
  auto f = testsupport::coverage_oracle_abc();
  CHECK(f->evaluate(SortedSet{0}) == Rational(2));
  CHECK(f->evaluate(SortedSet{1}) == Rational(2));
  CHECK(f->evaluate(SortedSet{0, 1}) == Rational(3));
  CHECK(f->marginal(1, SortedSet{0}) == Rational(1));
  CHECK(f->marginal(2, SortedSet{1}) == Rational(0));
}

TEST_CASE("concave over modular interpolates power breakpoints", "[oracle]") {
  // alpha = 1/2 over unit weights: exact at x = 1 and 4, chords in between.
  smkp::ConcaveOverModularOracle<Rational> f(rationals({1, 1, 1, 1, 1}), 1, 2);
  CHECK(f.evaluate(SortedSet{0}) == Rational(1));
  CHECK(f.evaluate(SortedSet{0, 1}) == smkp::make_rational(4, 3));
  CHECK(f.evaluate(SortedSet{0, 1, 2}) == smkp::make_rational(5, 3));
  CHECK(f.evaluate(SortedSet{0, 1, 2, 3}) == Rational(2));
  CHECK(f.evaluate(SortedSet{0, 1, 2, 3, 4}) == smkp::make_rational(11, 5));

  // alpha = 1 collapses to the plain sum.
  smkp::ConcaveOverModularOracle<Rational> linear(rationals({3, 5}), 2, 2);
  CHECK(linear.evaluate(SortedSet{0, 1}) == Rational(8));

  CHECK(error_code_of([] {
          smkp::ConcaveOverModularOracle<Rational> bad(rationals({1}), 3, 2);
        }) == ErrorCode::kMalformedInput);
}

TEST_CASE("query accounting includes memoized answers", "[oracle]") {
  smkp::ModularOracle<Rational> f(rationals({1, 2}));
  f.reset_query_count();
  CHECK(f.query_count() == 0);

  CHECK(f.evaluate(SortedSet{0}) == Rational(1));
  CHECK(f.query_count() == 1);
  CHECK(f.evaluate(SortedSet{0}) == Rational(1));  // memo hit still bills
  CHECK(f.query_count() == 2);

  CHECK(f.marginal(1, SortedSet{0}) == Rational(2));  // two evaluations
  CHECK(f.query_count() == 4);
  CHECK(f.marginal(0, SortedSet{0}) == Rational(0));  // answered structurally
  CHECK(f.query_count() == 4);

  CHECK(f.evaluate(SortedSet{}) == Rational(0));  // empty set is still a query
  CHECK(f.query_count() == 5);

  f.reset_query_count();
  CHECK(f.query_count() == 0);
}

TEST_CASE("exhaustive verification certifies the stock families", "[oracle]") {
  smkp::ModularOracle<Rational> modular(rationals({5, 0, 3, 7}));
  CHECK(smkp::verify_submodular(modular, 4).all());

  auto coverage = testsupport::coverage_oracle_abc();
  CHECK(smkp::verify_submodular(*coverage, 3).all());

  smkp::ConcaveOverModularOracle<Rational> concave(rationals({1, 1, 1, 1, 1}),
                                                   1, 2);
  CHECK(smkp::verify_submodular(concave, 5).all());
}

TEST_CASE("exhaustive verification pinpoints violations", "[oracle]") {
  SquaredCardinalityOracle squared(3);
  const auto report = smkp::verify_submodular(squared, 3);
  CHECK(report.normalized);
  CHECK(report.monotone);
  CHECK_FALSE(report.submodular);
  REQUIRE(report.witness.has_value());
  // First violation in scan order: S = {}, T = {0}, u = 1.
  CHECK(report.witness->s == SortedSet{});
  CHECK(report.witness->t == SortedSet{0});
  CHECK(report.witness->u == 1);
  const Rational small_gain = squared.evaluate(smkp::set_with(report.witness->s,
                                                              report.witness->u)) -
                              squared.evaluate(report.witness->s);
  const Rational large_gain = squared.evaluate(smkp::set_with(report.witness->t,
                                                              report.witness->u)) -
                              squared.evaluate(report.witness->t);
  CHECK(small_gain < large_gain);

  SingletonSpikeOracle spike(3);
  const auto spike_report = smkp::verify_submodular(spike, 3);
  CHECK(spike_report.normalized);
  CHECK_FALSE(spike_report.monotone);
  REQUIRE(spike_report.witness.has_value());
  CHECK(spike_report.witness->s == spike_report.witness->t);

  CHECK(error_code_of([&] { smkp::verify_submodular(squared, 13); }) ==
        ErrorCode::kSizeLimit);
}

TEST_CASE("invalid elements are rejected", "[oracle]") {
  smkp::ModularOracle<Rational> f(rationals({1, 2, 3}));
  CHECK(error_code_of([&] { f.evaluate(SortedSet{7}); }) ==
        ErrorCode::kInvalidElement);
  CHECK(error_code_of([&] { f.marginal(9, SortedSet{}); }) ==
        ErrorCode::kInvalidElement);
}

TEST_CASE("oracle views condition on a base", "[oracle]") {
  smkp::ModularOracle<Rational> f(rationals({6, 4, 3}));
  const auto view = smkp::OracleView<Rational>::conditioned(f, SortedSet{0});
  CHECK(view.value(SortedSet{1}) == Rational(4));
  CHECK(view.value(SortedSet{1, 2}) == Rational(7));

  const auto count_before = f.query_count();
  CHECK(view.value(SortedSet{}) == Rational(0));  // no query for the empty set
  CHECK(f.query_count() == count_before);

  const auto whole = smkp::OracleView<Rational>::whole(f);
  CHECK(whole.value(SortedSet{2}) == Rational(3));
  const auto extended = whole.extend(SortedSet{0}).extend(SortedSet{1});
  CHECK(extended.base() == SortedSet{0, 1});
  CHECK(extended.value(SortedSet{2}) == Rational(3));

  auto coverage = testsupport::coverage_oracle_abc();
  const auto cview =
      smkp::OracleView<Rational>::conditioned(*coverage, SortedSet{0});
  CHECK(cview.value(SortedSet{1}) == Rational(1));
}
