// Copyright 2026 The matcube Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace matcube {

/// Worker count: MATCUBE_THREADS if set (>= 1), else hardware concurrency.
inline std::size_t thread_count() {
  if (const char* env = std::getenv("MATCUBE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [0, total) into fixed chunks of the given size, evaluates
/// work(begin, end) per chunk on a pool, and combines the chunk results
/// strictly in chunk order. The chunk layout depends only on total and
/// chunk_size, so results are bitwise independent of the worker count.
template <class T, class Work, class Combine>
T parallel_chunk_reduce(std::size_t total, std::size_t chunk_size, T init,
                        Work&& work, Combine&& combine) {
  if (chunk_size == 0) throw std::invalid_argument("parallel_chunk_reduce: chunk_size must be >= 1");
  if (total == 0) return init;
  const std::size_t chunks = (total + chunk_size - 1) / chunk_size;
  std::vector<T> partial(chunks, init);
  const std::size_t workers = std::min(thread_count(), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t begin = c * chunk_size;
      const std::size_t end = std::min(total, begin + chunk_size);
      partial[c] = work(begin, end);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t c = next.fetch_add(1);
          if (c >= chunks) return;
          const std::size_t begin = c * chunk_size;
          const std::size_t end = std::min(total, begin + chunk_size);
          partial[c] = work(begin, end);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  T acc = init;
  for (std::size_t c = 0; c < chunks; ++c) acc = combine(acc, partial[c]);
  return acc;
}

/// Runs fn(i) for i in [0, total) on a pool. Safe only when iterations
/// write to disjoint slots.
template <class Fn>
void parallel_for_index(std::size_t total, Fn&& fn) {
  const std::size_t workers = std::min(thread_count(), total);
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= total) return;
        fn(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace matcube
