#ifndef LEVYGAS_PARALLEL_HPP
#define LEVYGAS_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace levygas {

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Fixed-size task pool over indices 0..n-1. Bodies must write only to
// per-index slots: results are then a pure function of the index, and the
// outcome is independent of the schedule and of the worker count.
inline void parallel_for_index(std::int64_t n, int workers,
                               const std::function<void(std::int64_t)>& body) {
  workers = resolve_workers(workers);
  if (workers <= 1 || n <= 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr first_error = nullptr;
  std::mutex error_mutex;
  auto drain = [&] {
    for (;;) {
      std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
        next.store(n, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace levygas

#endif
