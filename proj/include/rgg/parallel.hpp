#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace rgg {

// Runs fn(i) for i in [0, count) across `threads` workers. Workers pull
// indices from a shared counter; results must be written into
// index-addressed slots by the callee, which keeps the assembled output
// independent of scheduling and of the worker count.
template <typename F>
void parallel_for_indexed(long count, int threads, F&& fn) {
  if (threads <= 1 || count <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  auto worker = [&]() {
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int spawn = int(std::min<long>(threads, count));
  pool.reserve(std::size_t(spawn));
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace rgg
