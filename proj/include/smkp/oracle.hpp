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

#include <atomic>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "smkp/core.hpp"
#include "smkp/errors.hpp"
#include "smkp/rational.hpp"

namespace smkp {

enum class OracleFamily {
  kModular,
  kWeightedCoverage,
  kConcaveOverModular,
  kCustom,
};

// Value oracle for a normalized monotone submodular set function over a dense
// ground set [0, n). evaluate() is pure: the same set always yields the same
// value, and concurrent callers are safe. Every evaluate call counts as one
// query, including calls answered from the internal memo table.
template <class V>
class Oracle {
 public:
  explicit Oracle(std::size_t ground_size) : n_(ground_size) {
    memo_enabled_ = n_ <= 64;
  }
  virtual ~Oracle() = default;

  std::size_t ground_size() const { return n_; }
  virtual OracleFamily family() const { return OracleFamily::kCustom; }

  V evaluate(std::span<const ElementId> set) const {
    queries_.fetch_add(1, std::memory_order_relaxed);
    for (ElementId u : set) {
      require(u < n_, ErrorCode::kInvalidElement,
              "element " + std::to_string(u) + " outside ground set of size " +
                  std::to_string(n_));
    }
    if (set.empty()) return V(0);
    if (is_canonical_set(set)) {
      if (!memo_enabled_) return evaluate_sorted(set);
      return memoized(set);
    }
    SortedSet canon(set.begin(), set.end());
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    if (!memo_enabled_) return evaluate_sorted(canon);
    return memoized(canon);
  }

  // f(u | set). Two evaluate queries unless u is already in the set.
  V marginal(ElementId u, std::span<const ElementId> set) const {
    require(u < n_, ErrorCode::kInvalidElement, "marginal of invalid element");
    if (set_contains(set, u)) return V(0);
    V with = evaluate(set_with(set, u));
    V without = evaluate(set);
    return with - without;
  }

  std::uint64_t query_count() const { return queries_.load(std::memory_order_relaxed); }
  void reset_query_count() { queries_.store(0, std::memory_order_relaxed); }

 protected:
  // `set` is sorted and duplicate-free.
  virtual V evaluate_sorted(std::span<const ElementId> set) const = 0;

 private:
  V memoized(std::span<const ElementId> set) const {
    std::uint64_t mask = 0;
    for (ElementId u : set) mask |= std::uint64_t{1} << u;
    {
      std::shared_lock lock(memo_mutex_);
      auto it = memo_.find(mask);
      if (it != memo_.end()) return it->second;
    }
    V value = evaluate_sorted(set);
    std::unique_lock lock(memo_mutex_);
    if (memo_.size() < kMemoCap) memo_.emplace(mask, value);
    return value;
  }

  static constexpr std::size_t kMemoCap = std::size_t{1} << 22;
  std::size_t n_;
  bool memo_enabled_;
  mutable std::atomic<std::uint64_t> queries_{0};
  mutable std::shared_mutex memo_mutex_;
  mutable std::unordered_map<std::uint64_t, V> memo_;
};

// f(S) = sum of per-element weights.
template <class V>
class ModularOracle : public Oracle<V> {
 public:
  ModularOracle(std::vector<V> weights)
      : Oracle<V>(weights.size()), weights_(std::move(weights)) {
    for (const V& w : weights_) {
      require(w >= V(0), ErrorCode::kMalformedInput, "negative modular weight");
    }
  }
  OracleFamily family() const override { return OracleFamily::kModular; }
  const std::vector<V>& weights() const { return weights_; }

 protected:
  V evaluate_sorted(std::span<const ElementId> set) const override {
    V total(0);
    for (ElementId u : set) total += weights_[u];
    return total;
  }

 private:
  std::vector<V> weights_;
};

// f(S) = total weight of the universe points covered by S.
template <class V>
class WeightedCoverageOracle : public Oracle<V> {
 public:
  WeightedCoverageOracle(std::vector<std::vector<std::uint32_t>> covers,
                         std::vector<V> point_weights)
      : Oracle<V>(covers.size()),
        covers_(std::move(covers)),
        point_weights_(std::move(point_weights)) {
    for (const auto& cover : covers_) {
      for (std::uint32_t p : cover) {
        require(p < point_weights_.size(), ErrorCode::kMalformedInput,
                "coverage point out of range");
      }
    }
    for (const V& w : point_weights_) {
      require(w >= V(0), ErrorCode::kMalformedInput, "negative point weight");
    }
  }
  OracleFamily family() const override { return OracleFamily::kWeightedCoverage; }
  const std::vector<std::vector<std::uint32_t>>& covers() const { return covers_; }
  const std::vector<V>& point_weights() const { return point_weights_; }

 protected:
  V evaluate_sorted(std::span<const ElementId> set) const override {
    V total(0);
    std::vector<char> seen(point_weights_.size(), 0);
    for (ElementId u : set) {
      for (std::uint32_t p : covers_[u]) {
        if (!seen[p]) {
          seen[p] = 1;
          total += point_weights_[p];
        }
      }
    }
    return total;
  }

 private:
  std::vector<std::vector<std::uint32_t>> covers_;
  std::vector<V> point_weights_;
};

// f(S) = phi(sum of weights over S) for a concave increasing phi with
// phi(0) = 0, which makes f monotone submodular.
//
// phi is parameterized by an exponent alpha = p/q in (0, 1] and defined as the
// piecewise-linear interpolation of x^alpha at the breakpoints x = i^q, where
// x^alpha = i^p is exact. Interpolating there keeps every value rational (the
// verbatim power map would produce irrational values for alpha < 1, which the
// exact value mode cannot represent); successive chord slopes of a concave
// function decrease, so phi is still concave and increasing.
template <class V>
class ConcaveOverModularOracle : public Oracle<V> {
 public:
  ConcaveOverModularOracle(std::vector<V> weights, unsigned alpha_num,
                           unsigned alpha_den)
      : Oracle<V>(weights.size()),
        weights_(std::move(weights)),
        p_(alpha_num),
        q_(alpha_den) {
    require(p_ >= 1 && q_ >= 1 && p_ <= q_, ErrorCode::kMalformedInput,
            "alpha must lie in (0, 1]");
    for (const V& w : weights_) {
      require(w >= V(0), ErrorCode::kMalformedInput, "negative weight");
    }
  }
  OracleFamily family() const override { return OracleFamily::kConcaveOverModular; }
  const std::vector<V>& weights() const { return weights_; }
  unsigned alpha_num() const { return p_; }
  unsigned alpha_den() const { return q_; }

 protected:
  V evaluate_sorted(std::span<const ElementId> set) const override {
    V x(0);
    for (ElementId u : set) x += weights_[u];
    if (p_ == q_) return x;  // alpha = 1 degenerates to modular
    if (!(x > V(0))) return V(0);
    // Find i >= 1 with (i-1)^q <= x <= i^q.
    std::uint64_t i = 1;
    while (!(x <= ipow(i, q_))) ++i;
    V lo_x = ipow(i - 1, q_);
    V hi_x = ipow(i, q_);
    V lo_y = ipow(i - 1, p_);
    V hi_y = ipow(i, p_);
    return lo_y + (x - lo_x) * (hi_y - lo_y) / (hi_x - lo_x);
  }

 private:
  static V ipow(std::uint64_t base, unsigned exp) {
    BigInt b = base;
    BigInt acc = 1;
    for (unsigned k = 0; k < exp; ++k) acc *= b;
    return ValueTraits<V>::from_rational(Rational(acc));
  }

  std::vector<V> weights_;
  unsigned p_;
  unsigned q_;
};

// ---------------------------------------------------------------------------
// Exhaustive property verification for small ground sets.

struct SubmodularityWitness {
  SortedSet s;
  SortedSet t;
  ElementId u = 0;
};

struct SubmodularityReport {
  bool normalized = false;
  bool monotone = false;
  bool submodular = false;
  std::optional<SubmodularityWitness> witness;

  bool all() const { return normalized && monotone && submodular; }
};

// Checks f(empty) = 0, monotonicity, and submodularity over all subsets of
// [0, n). Submodularity is checked through the equivalent pairwise condition
// f(M+u) - f(M) >= f(M+v+u) - f(M+v) for all M and distinct u, v outside M;
// the witness reported for a violation is (S, T, u) = (M, M+v, u).
template <class V>
SubmodularityReport verify_submodular(const Oracle<V>& oracle, std::size_t n) {
  require(n <= 12, ErrorCode::kSizeLimit,
          "exhaustive submodularity check capped at 12 elements");
  require(n <= oracle.ground_size(), ErrorCode::kInvalidElement,
          "check exceeds oracle ground set");
  const std::size_t count = std::size_t{1} << n;
  std::vector<V> value(count);
  SortedSet scratch;
  for (std::size_t mask = 0; mask < count; ++mask) {
    scratch.clear();
    for (std::size_t u = 0; u < n; ++u) {
      if (mask & (std::size_t{1} << u)) scratch.push_back(static_cast<ElementId>(u));
    }
    value[mask] = oracle.evaluate(scratch);
  }
  auto set_of = [&](std::size_t mask) {
    SortedSet out;
    for (std::size_t u = 0; u < n; ++u) {
      if (mask & (std::size_t{1} << u)) out.push_back(static_cast<ElementId>(u));
    }
    return out;
  };

  SubmodularityReport report;
  report.normalized = value[0] == V(0);
  if (!report.normalized) {
    report.monotone = report.submodular = false;
    report.witness = SubmodularityWitness{{}, {}, 0};
    return report;
  }

  report.monotone = true;
  for (std::size_t mask = 0; mask < count && report.monotone; ++mask) {
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t bit = std::size_t{1} << u;
      if (mask & bit) continue;
      if (value[mask | bit] < value[mask]) {
        report.monotone = false;
        report.witness =
            SubmodularityWitness{set_of(mask), set_of(mask), static_cast<ElementId>(u)};
        break;
      }
    }
  }

  report.submodular = true;
  for (std::size_t mask = 0; mask < count && report.submodular; ++mask) {
    for (std::size_t v = 0; v < n && report.submodular; ++v) {
      const std::size_t vbit = std::size_t{1} << v;
      if (mask & vbit) continue;
      for (std::size_t u = 0; u < n; ++u) {
        const std::size_t ubit = std::size_t{1} << u;
        if (u == v || (mask & ubit)) continue;
        V small_gain = value[mask | ubit] - value[mask];
        V large_gain = value[mask | vbit | ubit] - value[mask | vbit];
        if (small_gain < large_gain) {
          report.submodular = false;
          if (!report.witness) {
            report.witness = SubmodularityWitness{set_of(mask), set_of(mask | vbit),
                                                  static_cast<ElementId>(u)};
          }
          break;
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// A conditioned reading of an oracle: g(S) = f(S | base) = f(S + base) - f(base).
// Views always sit directly on the root oracle, so nesting never stacks
// indirections; extend() unions bases instead.
template <class V>
class OracleView {
 public:
  static OracleView whole(const Oracle<V>& oracle) {
    return OracleView(oracle, SortedSet{});
  }

  static OracleView conditioned(const Oracle<V>& oracle, SortedSet base) {
    return OracleView(oracle, std::move(base));
  }

  OracleView extend(std::span<const ElementId> extra) const {
    if (extra.empty()) return *this;
    return OracleView(*oracle_, set_union(base_, extra));
  }

  // g(S). g(empty) = 0 by construction and does not cost a query.
  V value(std::span<const ElementId> set) const {
    if (set.empty()) return V(0);
    return oracle_->evaluate(set_union(set, base_)) - base_value_;
  }

  const SortedSet& base() const { return base_; }
  const Oracle<V>& oracle() const { return *oracle_; }

 private:
  OracleView(const Oracle<V>& oracle, SortedSet base)
      : oracle_(&oracle), base_(std::move(base)) {
    base_value_ = base_.empty() ? V(0) : oracle_->evaluate(base_);
  }

  const Oracle<V>* oracle_;
  SortedSet base_;
  V base_value_;
};

}  // namespace smkp
