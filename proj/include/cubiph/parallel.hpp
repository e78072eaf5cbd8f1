#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cubiph {

/// Calls fn(i) for i in [0, count) on up to `jobs` threads and returns the
/// results in index order, so output never depends on the worker count.
/// The first exception thrown by any call is rethrown after all workers stop.
template <typename Fn>
auto parallel_map(std::size_t count, std::size_t jobs, Fn&& fn) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> results(count);
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i)
      results[i] = fn(i);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w)
      workers.emplace_back([&] {
        while (!failed.load(std::memory_order_relaxed)) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count)
            return;
          try {
            results[i] = fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error)
              error = std::current_exception();
            failed = true;
          }
        }
      });
  }
  if (error)
    std::rethrow_exception(error);
  return results;
}

} // namespace cubiph
