#pragma once

#include <cstdlib>
#include <functional>
#include <mutex>
#include <queue>
#include <thread>
#include <vector>

namespace greenlaunch {

// Number of worker threads for experiment cells: hardware concurrency,
// capped by the GREENLAUNCH_THREADS environment variable.
inline unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("GREENLAUNCH_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
  }
  return n;
}

// Runs all tasks on `threads` workers and joins. Each task must be
// independent; results are written into caller-owned slots by index so the
// merge order never depends on scheduling.
inline void run_parallel(std::vector<std::function<void()>> tasks, unsigned threads = 0) {
  if (threads == 0) threads = worker_count();
  if (threads <= 1 || tasks.size() <= 1) {
    for (auto& t : tasks) t();
    return;
  }
  std::mutex mu;
  size_t next = 0;
  auto worker = [&] {
    for (;;) {
      size_t idx;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= tasks.size()) return;
        idx = next++;
      }
      tasks[idx]();
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
  pool.reserve(n);
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace greenlaunch
