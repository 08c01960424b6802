#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace kdekit {

//! Runs fn(i) for i in [0, count), partitioned over n_threads contiguous
//! chunks. Each index is computed exactly once; callers store results by
//! index, so output is deterministic regardless of thread count.
inline void parallel_for(std::size_t count, int n_threads,
                         const std::function<void(std::size_t)>& fn)
{
  if (n_threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers =
    std::min<std::size_t>(static_cast<std::size_t>(n_threads), count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace kdekit
