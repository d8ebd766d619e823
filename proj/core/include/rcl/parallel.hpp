#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace rcl {

/// Runs fn(0) .. fn(trials-1) on up to `jobs` threads. Trials must be
/// independent; callers make results deterministic by writing into
/// index-addressed slots, so scheduling order never matters.
template <typename Fn>
void parallel_trials(std::size_t trials, int jobs, Fn&& fn) {
  if (jobs <= 1 || trials <= 1) {
    for (std::size_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), trials);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next.fetch_add(1); t < trials;
           t = next.fetch_add(1)) {
        fn(t);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace rcl
