#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace mtower {

/// Worker count: MTOWER_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs job(i) for i in [0, n) on up to `threads` workers. Results land in
/// index order, so the output never depends on scheduling. The first
/// exception thrown by any job is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& job, std::size_t threads = 0);

template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, F&& f, std::size_t threads = 0) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = f(i); }, threads);
  return out;
}

}  // namespace mtower
