#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace twoadic {

/// Splits [0, total) into `workers` contiguous ranges and runs fn(worker, begin, end)
/// on each, one thread per range. Results must be combined by the caller in worker
/// order so the outcome does not depend on scheduling.
template <class Fn>
void parallel_ranges(std::uint64_t total, unsigned workers, Fn&& fn) {
  workers = std::max(1U, workers);
  if (total < workers) workers = static_cast<unsigned>(std::max<std::uint64_t>(total, 1));
  const std::uint64_t step = total / workers;
  const std::uint64_t extra = total % workers;
  auto range_begin = [&](unsigned w) { return w * step + std::min<std::uint64_t>(w, extra); };

  if (workers == 1) {
    fn(0U, std::uint64_t{0}, total);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        fn(w, range_begin(w), range_begin(w + 1));
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline unsigned default_workers() { return std::max(1U, std::thread::hardware_concurrency()); }

}  // namespace twoadic
