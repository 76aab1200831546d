// Copyright 2026 The feketelab Authors
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

// Deterministic work partitioning for pair scans.  The index range is cut
// into fixed contiguous blocks; workers pull blocks from an atomic counter,
// and results are merged in block order, so the assembled report does not
// depend on the schedule.  FEKETE_THREADS caps the worker count.

#ifndef FEKETE_PARALLEL_HPP
#define FEKETE_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "fekete/errors.hpp"

namespace fekete {

inline std::size_t worker_count(std::size_t requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FEKETE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

struct ScanOptions {
  std::size_t threads = 0;      // 0: worker_count() decides
  bool stop_at_first = false;   // finish the current anti-diagonal, then stop
};

// Apply fn(lo, hi) to contiguous blocks of [begin, end) and return the block
// results in ascending block order.  fn must be safe to call concurrently.
template <class R, class Fn>
std::vector<R> run_blocks(Index begin, Index end, std::size_t threads, Index block_size, Fn&& fn) {
  if (end <= begin) return {};
  if (block_size < 1) block_size = 1;
  std::size_t nblocks = static_cast<std::size_t>((end - begin + block_size - 1) / block_size);
  std::vector<R> results(nblocks);
  if (threads <= 1 || nblocks == 1) {
    for (std::size_t b = 0; b < nblocks; ++b) {
      Index lo = begin + static_cast<Index>(b) * block_size;
      Index hi = std::min(end, lo + block_size);
      results[b] = fn(lo, hi);
    }
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      std::size_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      Index lo = begin + static_cast<Index>(b) * block_size;
      Index hi = std::min(end, lo + block_size);
      try {
        results[b] = fn(lo, hi);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  std::size_t n = std::min(threads, nblocks);
  pool.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

}  // namespace fekete

#endif
