#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace ernet {

/// Run fn(0..n_items) across a small worker pool.  Callers keep results in
/// per-item storage and reduce in index order afterwards, so output never
/// depends on how items were scheduled.  If items throw, the exception of
/// the lowest-numbered failing item is rethrown after the pool drains.
inline void parallel_for(int n_items, int n_threads,
                         const std::function<void(int)>& fn) {
  if (n_threads < 1) n_threads = 1;
  if (n_threads == 1 || n_items <= 1) {
    for (int i = 0; i < n_items; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n_items);
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min(n_threads, n_items);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n_items; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

inline int default_threads() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

}  // namespace ernet
