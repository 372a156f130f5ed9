#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace pcbias {

/// Worker count for internal parallel loops. Honors PARITY_BIAS_THREADS when
/// set to a positive integer, otherwise hardware concurrency.
unsigned worker_count();

/// Splits [0, count) into at most `workers` contiguous ranges, runs
/// fn(begin, end) for each on its own thread and returns the results in
/// range order. Results are combined by the caller, so the outcome does not
/// depend on scheduling.
template <class Fn>
auto parallel_ranges(std::uint64_t count, unsigned workers, Fn fn) {
  using Result = decltype(fn(std::uint64_t{0}, std::uint64_t{0}));
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(std::min<std::uint64_t>(workers, count), 1, 1024));
  std::vector<Result> results(workers);
  if (workers == 1) {
    results[0] = fn(0, count);
    return results;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = count * w / workers;
    const std::uint64_t end = count * (w + 1) / workers;
    pool.emplace_back([&results, &fn, w, begin, end] { results[w] = fn(begin, end); });
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace pcbias
