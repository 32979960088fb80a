#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace bentchain {

/// Evaluates f(0..count-1) on up to `jobs` threads. Results land in index
/// order, so the output does not depend on the job count. The first
/// exception thrown by any worker is rethrown on the caller's thread.
template <class F>
auto parallel_map(std::size_t count, int jobs, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using Result = std::invoke_result_t<F&, std::size_t>;
  std::vector<Result> out(count);
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(std::min(workers, count));
  for (std::size_t w = 0; w < std::min(workers, count); ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace bentchain
