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
#include <numeric>
#include <optional>
#include <vector>

#include "smkp/errors.hpp"
#include "smkp/exact.hpp"
#include "smkp/instance.hpp"
#include "smkp/rational.hpp"

namespace smkp {

// Capacity leveling: rounds a capacity vector down so the bins split into
// blocks of equal capacity. Blocks at level i hold t^i bins; every level
// below the top holds exactly t*t blocks; the top level holds k <= t*t
// blocks whose last one may be short or empty. Solvers may skip that last
// top-level block entirely when the top level is above zero, trading a
// bounded value loss for the uniform block shape.

template <class V>
struct Block {
  std::size_t level = 0;
  std::size_t index = 0;           // position of the block within its level
  std::vector<std::size_t> bins;   // original bin positions, capacity descending
  V capacity{};                    // shared rounded capacity of the block's bins
};

template <class V>
struct LeveledStructure {
  unsigned t = 2;
  std::vector<V> original_capacities;
  std::vector<V> rounded_capacities;   // indexed by original bin position
  std::vector<Block<V>> blocks;        // level ascending, then index ascending
  std::size_t ell = 0;                 // top level
  std::size_t k = 0;                   // block count at the top level
};

// Sorts bins by capacity descending (ties by position) and groups them:
// the t*t largest become singleton level-0 blocks with capacities kept
// exactly, each further level takes up to t*t consecutive runs of t^i bins,
// and every block rounds to the minimum capacity inside it. Whenever a level
// fills completely and nothing remains, the top level still appears, holding
// a single empty block.
template <class V>
LeveledStructure<V> level_capacities(const std::vector<V>& capacities, unsigned t) {
  require(t >= 2, ErrorCode::kMalformedInput, "leveling needs t of at least 2");
  require(t <= (1u << 16), ErrorCode::kSizeLimit, "leveling parameter too large");
  require(!capacities.empty(), ErrorCode::kMalformedInput, "no bins to level");
  for (const V& b : capacities) {
    require(b > V(0), ErrorCode::kMalformedInput, "capacities must be positive");
  }
  const std::size_t m = capacities.size();
  const std::size_t tsq = static_cast<std::size_t>(t) * t;

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return capacities[a] > capacities[b];
  });

  LeveledStructure<V> ls;
  ls.t = t;
  ls.original_capacities = capacities;
  ls.rounded_capacities.assign(m, V(0));

  auto emit = [&](std::size_t level, std::size_t index, std::size_t first,
                  std::size_t count) {
    Block<V> block;
    block.level = level;
    block.index = index;
    if (count == 0) {
      block.capacity = V(0);
    } else {
      block.bins.assign(order.begin() + first, order.begin() + first + count);
      // Sorted descending, so the run's minimum capacity sits at its end.
      block.capacity = capacities[block.bins.back()];
      for (std::size_t bin : block.bins) ls.rounded_capacities[bin] = block.capacity;
    }
    ls.blocks.push_back(std::move(block));
  };

  if (m < tsq) {
    for (std::size_t i = 0; i < m; ++i) emit(0, i, i, 1);
    ls.ell = 0;
    ls.k = m;
    return ls;
  }

  std::size_t pos = 0;
  std::size_t level = 0;
  std::size_t block_size = 1;
  for (;;) {
    const std::size_t remaining = m - pos;
    if (remaining >= tsq * block_size) {
      for (std::size_t j = 0; j < tsq; ++j, pos += block_size) {
        emit(level, j, pos, block_size);
      }
      ++level;
      block_size *= t;
      continue;
    }
    const std::size_t full = remaining / block_size;
    const std::size_t partial = remaining % block_size;
    for (std::size_t j = 0; j < full; ++j, pos += block_size) {
      emit(level, j, pos, block_size);
    }
    if (partial > 0) {
      emit(level, full, pos, partial);
      ls.k = full + 1;
    } else if (full > 0) {
      ls.k = full;
    } else {
      emit(level, 0, pos, 0);
      ls.k = 1;
    }
    ls.ell = level;
    return ls;
  }
}

// The block a solver may leave empty: the last top-level block, defined only
// when the top level is above zero.
template <class V>
std::optional<std::size_t> droppable_block(const LeveledStructure<V>& ls) {
  if (ls.ell == 0) return std::nullopt;
  return ls.blocks.size() - 1;
}

// Re-checks every structural invariant from scratch.
template <class V>
bool verify_leveled(const LeveledStructure<V>& ls) {
  const unsigned t = ls.t;
  if (t < 2) return false;
  const std::size_t m = ls.original_capacities.size();
  if (ls.rounded_capacities.size() != m || m == 0) return false;
  const std::size_t tsq = static_cast<std::size_t>(t) * t;
  if (ls.k == 0 || ls.k > tsq) return false;

  std::vector<std::size_t> per_level(ls.ell + 1, 0);
  std::vector<char> seen(m, 0);
  std::size_t expected_size = 1;
  std::size_t current_level = 0;
  for (std::size_t bi = 0; bi < ls.blocks.size(); ++bi) {
    const Block<V>& block = ls.blocks[bi];
    if (block.level > ls.ell) return false;
    if (block.level < current_level) return false;  // level ascending
    while (current_level < block.level) {
      ++current_level;
      expected_size *= t;
    }
    if (block.index != per_level[block.level]) return false;  // index ascending
    ++per_level[block.level];

    const bool last_top = block.level == ls.ell && bi + 1 == ls.blocks.size();
    if (last_top) {
      if (block.bins.size() > expected_size) return false;
    } else if (block.bins.size() != expected_size) {
      return false;
    }
    if (block.bins.empty() && !last_top) return false;

    for (std::size_t bin : block.bins) {
      if (bin >= m || seen[bin]) return false;
      seen[bin] = 1;
      if (ls.rounded_capacities[bin] != block.capacity) return false;
      if (block.capacity > ls.original_capacities[bin]) return false;
    }
    if (!block.bins.empty() && !(block.capacity > V(0))) return false;
  }
  for (char s : seen) {
    if (!s) return false;
  }
  for (std::size_t i = 0; i < ls.ell; ++i) {
    if (per_level[i] != tsq) return false;
  }
  return per_level[ls.ell] == ls.k;
}

template <class V>
struct LevelingLoss {
  V opt_original{};
  V opt_leveled{};   // optimum over rounded bins, droppable block removed
  V ratio{};
  bool bound_holds = false;  // opt_leveled >= (1 - 1/t) * opt_original
};

// Brute-forces the optimum before and after leveling (with the droppable
// block removed) and reports the value retained. Exponential; small inputs
// only.
template <class V>
LevelingLoss<V> estimate_leveling_loss(const Instance<V>& inst, unsigned t,
                                       const BigInt& assignment_budget = BigInt(20000000)) {
  inst.validate();
  const LeveledStructure<V> ls = level_capacities(inst.capacities, t);
  const std::optional<std::size_t> dropped = droppable_block(ls);

  std::vector<V> leveled_caps;
  for (std::size_t bi = 0; bi < ls.blocks.size(); ++bi) {
    if (dropped && *dropped == bi) continue;
    leveled_caps.insert(leveled_caps.end(), ls.blocks[bi].bins.size(),
                        ls.blocks[bi].capacity);
  }
  Instance<V> leveled{inst.n, inst.sizes, leveled_caps, inst.oracle};

  LevelingLoss<V> out;
  out.opt_original = exact_solve(inst, assignment_budget).value;
  out.opt_leveled = exact_solve(leveled, assignment_budget).value;
  if (out.opt_original > V(0)) {
    out.ratio = out.opt_leveled / out.opt_original;
  } else {
    out.ratio = V(1);
  }
  const V t_value = ValueTraits<V>::from_rational(Rational(static_cast<long long>(t)));
  out.bound_holds = out.opt_leveled * t_value >= (t_value - V(1)) * out.opt_original;
  return out;
}

}  // namespace smkp
