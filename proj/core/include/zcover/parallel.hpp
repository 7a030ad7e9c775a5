#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace zcover {

// Runs f(i) for every i in [0, n), splitting the range over up to `jobs`
// threads.  Callers index results by i, so the output is deterministic
// regardless of the thread count.  The first exception thrown by any call is
// rethrown on the calling thread after all workers join.
inline void parallel_for(int n, int jobs, const std::function<void(int)>& f) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::mutex mu;
  std::exception_ptr first_error;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int t = 0; t < jobs; ++t) {
    int lo = static_cast<int>(static_cast<long long>(n) * t / jobs);
    int hi = static_cast<int>(static_cast<long long>(n) * (t + 1) / jobs);
    workers.emplace_back([&, lo, hi] {
      for (int i = lo; i < hi; ++i) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace zcover
