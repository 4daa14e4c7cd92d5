#pragma once

#include <atomic>
#include <thread>
#include <utility>
#include <vector>

namespace trisph {

// Worker count for data-parallel loops: TRISPH_THREADS if set, otherwise the
// hardware concurrency. Results never depend on it — each loop index writes
// its own slot and reductions run in index order.
int thread_count();
// n >= 1 forces a count; n == 0 restores the default.
void set_thread_count(int n);

template <typename F>
void parallel_for(int n, F&& f) {
  const int workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace trisph
