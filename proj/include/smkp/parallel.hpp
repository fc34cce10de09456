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
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace smkp {

// Deterministic parallel argmax over an indexed candidate range. Evaluation
// order is scheduler-dependent but the winner is not: candidates compare by
// (value descending, index ascending), so any thread count yields the same
// result. eval(i) returns nullopt to discard candidate i.
template <class V, class Payload, class Eval>
std::optional<std::pair<V, Payload>> parallel_best(std::size_t count, unsigned threads,
                                                   Eval&& eval) {
  struct Best {
    bool set = false;
    V value;
    std::size_t index = 0;
    Payload payload;
  };
  auto consider = [](Best& best, V value, std::size_t index, Payload payload) {
    if (!best.set || value > best.value ||
        (value == best.value && index < best.index)) {
      best.set = true;
      best.value = std::move(value);
      best.index = index;
      best.payload = std::move(payload);
    }
  };

  if (threads <= 1 || count <= 1) {
    Best best;
    for (std::size_t i = 0; i < count; ++i) {
      auto r = eval(i);
      if (r) consider(best, std::move(r->first), i, std::move(r->second));
    }
    if (!best.set) return std::nullopt;
    return std::make_pair(std::move(best.value), std::move(best.payload));
  }

  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(threads, count));
  std::vector<Best> bests(workers);
  std::vector<std::thread> pool;
  std::mutex error_mutex;
  std::exception_ptr error;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count) break;
          auto r = eval(i);
          if (r) consider(bests[w], std::move(r->first), i, std::move(r->second));
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  Best best;
  for (auto& b : bests) {
    if (b.set) consider(best, std::move(b.value), b.index, std::move(b.payload));
  }
  if (!best.set) return std::nullopt;
  return std::make_pair(std::move(best.value), std::move(best.payload));
}

}  // namespace smkp
