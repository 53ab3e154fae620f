#pragma once

#include <omp.h>

#include <algorithm>
#include <cstddef>
#include <vector>

namespace hts {

/// Worker count for a `jobs` argument: values <= 0 mean "all available".
inline int resolve_jobs(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

/// Half-open [begin, end) slice of `total` items owned by worker `w` of `workers`.
struct Slice {
  std::size_t begin;
  std::size_t end;
};
inline Slice slice_of(std::size_t total, int workers, int w) {
  const auto n = static_cast<std::size_t>(workers);
  const auto i = static_cast<std::size_t>(w);
  return {total * i / n, total * (i + 1) / n};
}

/// Sums per-item contributions into a counter vector of length `width`.
/// `fn(item, counts)` adds into counts; each worker owns a private vector and
/// the results are merged by addition.
template <class Counter, class Fn>
std::vector<Counter> parallel_tally(std::size_t items, std::size_t width, int jobs, Fn&& fn) {
  const int workers = std::max(1, std::min<int>(resolve_jobs(jobs), static_cast<int>(std::max<std::size_t>(items, 1))));
  std::vector<std::vector<Counter>> partial(static_cast<std::size_t>(workers), std::vector<Counter>(width, 0));
#pragma omp parallel for num_threads(workers) schedule(static)
  for (int w = 0; w < workers; ++w) {
    const Slice s = slice_of(items, workers, w);
    auto& local = partial[static_cast<std::size_t>(w)];
    for (std::size_t item = s.begin; item < s.end; ++item) fn(item, local);
  }
  std::vector<Counter> total(width, 0);
  for (const auto& local : partial)
    for (std::size_t c = 0; c < width; ++c) total[c] += local[c];
  return total;
}

}  // namespace hts
