#pragma once

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>
#include <vector>

namespace cacti {

inline int default_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : int(n);
}

// Bounded parallel map: fn(i) for i in [0, n), on at most `workers`
// concurrent std::async tasks. Each index must touch only its own outputs,
// so the result is identical to the serial order. Exceptions propagate.
template <typename Fn>
void parallel_for_n(int n, int workers, Fn&& fn) {
  if (n <= 0) return;
  if (workers <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  const int lanes = std::min(workers, n);
  std::vector<std::future<void>> futures;
  futures.reserve(std::size_t(lanes));
  for (int l = 0; l < lanes; ++l) {
    futures.push_back(std::async(std::launch::async, [&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    }));
  }
  for (auto& f : futures) f.get();
}

}  // namespace cacti
