#include "hts/combinatorics.hpp"

#include <numeric>
#include <string>

#include "hts/errors.hpp"

namespace hts {

Count binom(std::int64_t n, std::int64_t k, Count guard) {
  if (n < 0) throw InputError("binom: negative n = " + std::to_string(n));
  if (k < 0 || k > n) return Count(0);
  if (k > n - k) k = n - k;
  // After step i the accumulator holds C(n - k + i, i). Dividing out
  // gcd(acc, i) first keeps every intermediate no larger than that value.
  Count acc(1);
  for (std::int64_t i = 1; i <= k; ++i) {
    const auto factor = static_cast<std::uint64_t>(n - k + i);
    const auto divisor = static_cast<std::uint64_t>(i);
    const std::uint64_t g = std::gcd((acc % Count(divisor)).to_u64(), divisor);
    acc = (acc / Count(g)) * Count(factor / (divisor / g));
  }
  enforce_guard(acc, guard, "binomial coefficient");
  return acc;
}

SubsetRank subset_rank(std::span<const int> subset, int cardinality, int universe_size) {
  if (cardinality < 0 || static_cast<std::size_t>(cardinality) != subset.size())
    throw InputError("subset_rank: subset has " + std::to_string(subset.size()) +
                     " elements, expected " + std::to_string(cardinality));
  Count rank(0);
  for (std::size_t j = 0; j < subset.size(); ++j) {
    int c = subset[j];
    if (c < 0 || c >= universe_size)
      throw InputError("subset_rank: element " + std::to_string(c) + " outside universe of size " +
                       std::to_string(universe_size));
    if (j > 0 && subset[j - 1] >= c)
      throw InputError("subset_rank: elements must be strictly increasing");
    rank += binom(c, static_cast<std::int64_t>(j) + 1);
  }
  return {rank, universe_size, cardinality};
}

std::vector<int> subset_unrank(Count rank, int universe_size, int cardinality) {
  if (universe_size < 0 || cardinality < 0)
    throw InputError("subset_unrank: negative universe or cardinality");
  if (rank >= binom(universe_size, cardinality))
    throw InputError("subset_unrank: rank " + rank.to_string() + " out of range for C(" +
                     std::to_string(universe_size) + ", " + std::to_string(cardinality) + ")");
  std::vector<int> out(static_cast<std::size_t>(cardinality));
  int bound = universe_size;
  for (int j = cardinality; j >= 1; --j) {
    // Largest c < bound with C(c, j) <= rank.
    int c = bound - 1;
    while (binom(c, j) > rank) --c;
    out[static_cast<std::size_t>(j - 1)] = c;
    rank -= binom(c, j);
    bound = c;
  }
  return out;
}

}  // namespace hts
