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
#include <span>
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

// Solver for groups of identical-capacity bins. Elements larger than an
// epsilon fraction of the capacity are enumerated exhaustively; the rest are
// greedy-filled. The batch driver rotates fresh bins through that subroutine
// and keeps a slice of bins in reserve to absorb greedy overflow.

struct BatchConfig {
  Rational epsilon = Rational(1, 2);  // in (0,1)
  std::size_t batch_bins = 1;         // bins per inner invocation
  std::size_t min_bins = 1;           // smallest bin count the driver accepts
  bool guaranteed = false;            // true only for guarantee-grade parameters

  // Parameters large enough for the approximation analysis to apply:
  // ceil(4/eps^7) bins per batch, ceil(4/eps^8) bins minimum.
  static BatchConfig guarantee_grade(const Rational& epsilon) {
    require(epsilon > 0 && epsilon < 1, ErrorCode::kMalformedInput,
            "epsilon must lie strictly between 0 and 1");
    BatchConfig config;
    config.epsilon = epsilon;
    config.batch_bins = to_size(ceil_rational(Rational(4) / rational_pow(epsilon, 7)));
    config.min_bins = to_size(ceil_rational(Rational(4) / rational_pow(epsilon, 8)));
    config.guaranteed = true;
    return config;
  }

  // Desk-scale parameters. The control flow is identical; the output carries
  // no a-priori approximation guarantee.
  static BatchConfig overrides(const Rational& epsilon, std::size_t batch_bins,
                               std::size_t min_bins) {
    require(epsilon > 0 && epsilon < 1, ErrorCode::kMalformedInput,
            "epsilon must lie strictly between 0 and 1");
    require(batch_bins >= 1, ErrorCode::kMalformedInput, "batch_bins must be positive");
    require(min_bins >= batch_bins, ErrorCode::kMalformedInput,
            "min_bins must be at least batch_bins");
    BatchConfig config;
    config.epsilon = epsilon;
    config.batch_bins = batch_bins;
    config.min_bins = min_bins;
    config.guaranteed = false;
    return config;
  }
};

struct SizeSplit {
  SortedSet large;  // strictly larger than epsilon * capacity
  SortedSet small;
};

template <class V>
SizeSplit split_by_size(std::span<const ElementId> ground, ArgSpan<V> sizes,
                        const V& bin_capacity, const Rational& epsilon) {
  require(bin_capacity > V(0), ErrorCode::kMalformedInput, "capacity must be positive");
  const V threshold = ValueTraits<V>::from_rational(epsilon) * bin_capacity;
  SizeSplit split;
  for (ElementId u : ground) {
    require(u < sizes.size(), ErrorCode::kInvalidElement, "element without size");
    if (sizes[u] > threshold) {
      split.large.push_back(u);
    } else {
      split.small.push_back(u);
    }
  }
  return split;
}

namespace detail {

// Candidate score f(S) per bin used; compared by cross-multiplication so
// exact value types stay exact.
template <class V>
struct PerBinValue {
  V total{};
  std::size_t bins = 1;

  friend bool operator>(const PerBinValue& a, const PerBinValue& b) {
    return a.total * V(static_cast<long long>(b.bins)) >
           b.total * V(static_cast<long long>(a.bins));
  }
  friend bool operator==(const PerBinValue& a, const PerBinValue& b) {
    return a.total * V(static_cast<long long>(b.bins)) ==
           b.total * V(static_cast<long long>(a.bins));
  }
};

}  // namespace detail

template <class V>
struct ConstantBinsResult {
  Packing packing;            // local bins 1..k; greedy overflow markers kept
  std::size_t used_bins = 0;  // 0 for an empty packing
  V value{};                  // view value of the packed set
  std::uint64_t candidates = 0;
};

// Best-value-per-bin packing of up to k identical bins: enumerate every
// feasible placement of the large elements (one representative per bin
// permutation class), left-align its nonempty bins, greedy-fill the small
// elements into the leftover space of those bins, and keep the candidate
// with the highest value per used bin (ties to the earliest candidate).
// The empty placement always participates, so a lone-bin greedy over the
// small elements is the floor. Output may overflow each used bin by one
// marked element.
template <class V>
ConstantBinsResult<V> constant_bins_by_size(const OracleView<V>& f,
                                            std::span<const ElementId> ground,
                                            ArgSpan<V> sizes, std::size_t k,
                                            const V& bin_capacity,
                                            const Rational& epsilon,
                                            std::uint64_t candidate_budget = 2000000,
                                            unsigned threads = 1) {
  require(k >= 1, ErrorCode::kMalformedInput, "need at least one bin");
  require(epsilon > 0 && epsilon < 1, ErrorCode::kMalformedInput,
          "epsilon must lie strictly between 0 and 1");
  require(is_canonical_set(ground), ErrorCode::kInternalInvariant,
          "ground set must be sorted");
  const SizeSplit split = split_by_size(ground, sizes, bin_capacity, epsilon);

  std::vector<std::vector<SortedSet>> placements;
  enumerate_identical_bin_packings<V>(
      split.large, sizes, k, bin_capacity, candidate_budget,
      [&placements](const std::vector<SortedSet>& groups, std::uint64_t) {
        placements.push_back(groups);
        return true;
      });

  using Score = detail::PerBinValue<V>;
  using Payload = std::pair<Packing, std::size_t>;  // packing, bins used
  auto eval = [&](std::size_t i) -> std::optional<std::pair<Score, Payload>> {
    const std::vector<SortedSet>& groups = placements[i];
    const std::size_t nonempty = groups.size();
    const std::size_t bins_used = std::max<std::size_t>(nonempty, 1);

    Packing local = Packing::empty(sizes.size());
    std::vector<V> residual(bins_used, bin_capacity);
    SortedSet placed_large;
    for (std::size_t j = 0; j < nonempty; ++j) {
      for (ElementId u : groups[j]) {
        local.bin_of[u] = static_cast<std::int32_t>(j + 1);
        residual[j] -= sizes[u];
        placed_large.push_back(u);
      }
    }
    std::sort(placed_large.begin(), placed_large.end());

    const auto conditioned = f.extend(placed_large);
    GreedyResult<V> filled = greedy(conditioned, split.small, sizes, residual);
    for (ElementId u : filled.packing.elements()) {
      local.bin_of[u] = filled.packing.bin_of[u];
    }
    local.reserved = filled.packing.reserved;

    Score score;
    score.total = f.value(local.elements());
    score.bins = bins_used;
    return std::make_pair(std::move(score), Payload(std::move(local), bins_used));
  };

  auto best = parallel_best<Score, Payload>(placements.size(), threads, eval);
  require(best.has_value(), ErrorCode::kInternalInvariant,
          "bin enumeration produced no candidate");

  ConstantBinsResult<V> out;
  out.packing = std::move(best->second.first);
  out.used_bins = out.packing.packed_count() == 0 ? 0 : best->second.second;
  out.value = std::move(best->first.total);
  out.candidates = placements.size();
  return out;
}

template <class V>
struct IdenticalCaseResult {
  Packing packing;  // strictly feasible across all bins
  V value{};        // view value of the selected set
  std::size_t working_bins = 0;
  std::size_t reserve_bins = 0;
  std::vector<V> batch_values;          // marginal value added per batch
  std::vector<std::size_t> batch_used;  // bins consumed per batch
  std::vector<SortedSet> batch_elements;  // elements each batch added
  std::vector<ElementId> relocated;     // elements moved into reserve bins
};

// Batch driver over m identical bins. The first floor((1-eps)m) bins accept
// batches; the rest absorb overflow. Each round hands batch_bins still-empty
// working bins to constant_bins_by_size conditioned on everything chosen so
// far, keeps its placement, and relocates the overflow markers into the
// reserve bins (first-fit by bin, elements by descending size). Overflow
// markers always point at small elements, so guarantee-grade parameters make
// the reserve slice provably sufficient; an overfull reserve is an internal
// error. Stops when fewer than batch_bins empty working bins remain or a
// batch comes back empty.
template <class V>
IdenticalCaseResult<V> identical_case(const OracleView<V>& f,
                                      std::span<const ElementId> ground,
                                      ArgSpan<V> sizes, std::size_t m,
                                      const V& bin_capacity, const BatchConfig& config,
                                      std::uint64_t candidate_budget = 2000000,
                                      unsigned threads = 1) {
  require(m >= 1, ErrorCode::kMalformedInput, "need at least one bin");
  require(is_canonical_set(ground), ErrorCode::kInternalInvariant,
          "ground set must be sorted");
  require(bin_capacity > V(0), ErrorCode::kMalformedInput, "capacity must be positive");
  if (config.guaranteed) {
    require(m >= config.min_bins, ErrorCode::kMalformedInput,
            "bin count below the guarantee-grade minimum");
  }

  IdenticalCaseResult<V> out;
  out.packing = Packing::empty(sizes.size());
  out.working_bins = to_size(floor_rational((Rational(1) - config.epsilon) *
                                            Rational(BigInt(m))));
  out.reserve_bins = m - out.working_bins;

  std::vector<V> loads(m, V(0));
  std::vector<char> bin_used(m, 0);
  SortedSet chosen;
  const SortedSet all(ground.begin(), ground.end());

  for (;;) {
    std::vector<std::size_t> pool;
    for (std::size_t j = 0; j < out.working_bins; ++j) {
      if (!bin_used[j]) pool.push_back(j);
    }
    if (pool.size() < config.batch_bins) break;
    pool.resize(config.batch_bins);

    const SortedSet remaining = set_difference(all, chosen);
    const SortedSet before_batch = chosen;
    const auto conditioned = f.extend(chosen);
    ConstantBinsResult<V> batch =
        constant_bins_by_size(conditioned, remaining, sizes, config.batch_bins,
                              bin_capacity, config.epsilon, candidate_budget, threads);
    if (batch.packing.packed_count() == 0) break;

    // Overflow markers leave their working bin for a reserve bin, largest
    // elements first so the tightest relocations happen while reserve space
    // is most plentiful.
    std::vector<ElementId> overflow;
    for (const auto& [u, bin] : batch.packing.reserved) {
      (void)bin;
      overflow.push_back(u);
    }
    std::sort(overflow.begin(), overflow.end(), [&](ElementId a, ElementId b) {
      if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
      return a < b;
    });

    for (ElementId u : batch.packing.elements()) {
      if (batch.packing.is_reserved(u)) continue;
      const std::size_t local = static_cast<std::size_t>(batch.packing.bin_of[u] - 1);
      const std::size_t target = pool[local];
      out.packing.bin_of[u] = static_cast<std::int32_t>(target + 1);
      loads[target] += sizes[u];
      require(loads[target] <= bin_capacity, ErrorCode::kInternalInvariant,
              "batch placement overflowed a working bin");
      bin_used[target] = 1;
      set_insert(chosen, u);
    }
    const V small_threshold = ValueTraits<V>::from_rational(config.epsilon) * bin_capacity;
    for (ElementId u : overflow) {
      require(sizes[u] <= small_threshold, ErrorCode::kInternalInvariant,
              "an overflow marker points at a large element");
      bool placed = false;
      for (std::size_t j = out.working_bins; j < m && !placed; ++j) {
        if (loads[j] + sizes[u] <= bin_capacity) {
          out.packing.bin_of[u] = static_cast<std::int32_t>(j + 1);
          loads[j] += sizes[u];
          bin_used[j] = 1;
          set_insert(chosen, u);
          out.relocated.push_back(u);
          placed = true;
        }
      }
      require(placed, ErrorCode::kInternalInvariant,
              "reserve bins cannot absorb a relocated element");
    }

    out.batch_values.push_back(std::move(batch.value));
    out.batch_used.push_back(batch.used_bins);
    out.batch_elements.push_back(set_difference(chosen, before_batch));
  }

  out.value = f.value(chosen);
  return out;
}

}  // namespace smkp
