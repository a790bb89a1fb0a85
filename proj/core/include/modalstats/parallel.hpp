#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace modalstats {

/// Default worker count: hardware concurrency, at least 1.
inline int default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

/// Runs fn(begin, end) over contiguous index chunks on up to num_threads
/// workers. Falls back to a direct call for a single worker or tiny ranges.
/// The first exception thrown by a worker is rethrown on the caller.
inline void parallel_for_chunks(std::size_t count, int num_threads,
                                const std::function<void(std::size_t, std::size_t)>& fn) {
  if (num_threads < 1) num_threads = default_threads();
  const std::size_t min_chunk = 32;
  const int workers =
      static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(num_threads),
                                             std::max<std::size_t>(1, count / min_chunk)));
  if (workers <= 1 || count == 0) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  const std::size_t chunk = (count + static_cast<std::size_t>(workers) - 1) /
                            static_cast<std::size_t>(workers);
  for (int w = 0; w < workers; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&, w, begin, end] {
      try {
        if (begin < end) fn(begin, end);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace modalstats
