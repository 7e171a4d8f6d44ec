#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace monospec {

// Runs fn(i) for i in [0, total) on up to `threads` OS threads. Callers must
// write results into preallocated per-index slots; with that convention the
// outcome is independent of the thread count and of scheduling.
inline void parallel_for(std::int64_t total, int threads,
                         const std::function<void(std::int64_t)>& fn) {
  if (total <= 0) return;
  const int use = static_cast<int>(std::min<std::int64_t>(std::max(threads, 1), total));
  if (use == 1) {
    for (std::int64_t i = 0; i < total; ++i) fn(i);
    return;
  }
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(use);
  const std::int64_t chunk = (total + use - 1) / use;
  for (int t = 0; t < use; ++t) {
    const std::int64_t begin = t * chunk;
    const std::int64_t end = std::min(total, begin + chunk);
    pool.emplace_back([begin, end, &fn, &error_mutex, &first_error] {
      try {
        for (std::int64_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace monospec
