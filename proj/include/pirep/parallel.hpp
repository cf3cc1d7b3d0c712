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
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace pirep {

inline constexpr std::uint64_t kNoRank = ~std::uint64_t{0};

inline unsigned clamp_threads(unsigned t) { return t == 0 ? 1u : std::min(t, 64u); }

// Smallest rank in [0, count) with pred(rank) true, or kNoRank. The result is
// a pure function of pred: chunks are contiguous, each reports its first hit
// (its own minimum), and a chunk bails out only once an earlier-region hit
// already dominates everything it could still find.
template <class Pred>
std::uint64_t find_first_rank(std::uint64_t count, unsigned threads, Pred pred) {
  threads = clamp_threads(threads);
  if (threads == 1 || count < 1u << 14) {
    for (std::uint64_t r = 0; r < count; ++r)
      if (pred(r)) return r;
    return kNoRank;
  }
  std::atomic<std::uint64_t> best{kNoRank};
  std::vector<std::exception_ptr> errors(threads);
  const std::uint64_t chunk = (count + threads - 1) / threads;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          const std::uint64_t lo = t * chunk;
          const std::uint64_t hi = std::min<std::uint64_t>(count, lo + chunk);
          for (std::uint64_t r = lo; r < hi; ++r) {
            if ((r & 2047u) == 0 && best.load(std::memory_order_relaxed) < lo) return;
            if (pred(r)) {
              std::uint64_t cur = best.load(std::memory_order_relaxed);
              while (r < cur && !best.compare_exchange_weak(cur, r)) {
              }
              return;
            }
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return best.load();
}

// Runs fn(chunk_index, lo, hi) over a contiguous partition of [0, count).
// Callers merge per-chunk results in chunk order for deterministic output.
template <class Fn>
void parallel_chunks(std::uint64_t count, unsigned threads, Fn fn) {
  threads = clamp_threads(threads);
  if (threads == 1 || count < 2) {
    fn(0u, std::uint64_t{0}, count);
    return;
  }
  const std::uint64_t chunk = (count + threads - 1) / threads;
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          const std::uint64_t lo = t * chunk;
          const std::uint64_t hi = std::min<std::uint64_t>(count, lo + chunk);
          if (lo < hi) fn(t, lo, hi);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace pirep
