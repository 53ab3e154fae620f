#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hts/count.hpp"

namespace hts {

/// C(n, k) with the conventions C(n, k) = 0 for k < 0 or k > n and C(n, 0) = 1.
/// Throws InputError for n < 0 and CapacityError when the result exceeds `guard`.
Count binom(std::int64_t n, std::int64_t k, Count guard = kDefaultGuard);

/// Colexicographic rank of a k-subset of {0, ..., universe_size - 1}.
struct SubsetRank {
  Count rank;
  int universe_size = 0;
  int cardinality = 0;

  friend bool operator==(const SubsetRank&, const SubsetRank&) = default;
};

/// Rank = sum_j C(c_j, j + 1) over the sorted elements c_j.
/// Throws InputError if the subset is not strictly increasing, has the wrong
/// size, or leaves the universe.
SubsetRank subset_rank(std::span<const int> subset, int cardinality, int universe_size);

/// Inverse of subset_rank. Throws InputError when rank >= C(universe_size, cardinality).
std::vector<int> subset_unrank(Count rank, int universe_size, int cardinality);

}  // namespace hts
