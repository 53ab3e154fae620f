#include <algorithm>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "hts/combinatorics.hpp"
#include "hts/errors.hpp"
#include "hts/shape.hpp"

namespace hts {
namespace {

// Every k-subset of {0..n-1}, in colex order: compare from the largest element down.
std::vector<std::vector<int>> colex_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return out;
}

TEST(BinomTest, SmallValues) {
  EXPECT_EQ(binom(5, 0), Count(1));
  EXPECT_EQ(binom(3, 5), Count(0));
  EXPECT_EQ(binom(4, 2), Count(6));
  EXPECT_EQ(binom(0, 0), Count(1));
  EXPECT_EQ(binom(7, -1), Count(0));
  EXPECT_EQ(binom(60, 30), Count(118264581564861424ULL));
}

TEST(BinomTest, NegativeNIsRejected) { EXPECT_THROW(binom(-1, 0), InputError); }

TEST(BinomTest, PascalRecurrenceExhaustive) {
  for (int n = 1; n <= 30; ++n)
    for (int k = 1; k <= n; ++k) EXPECT_EQ(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k)) << n << " " << k;
}

TEST(BinomTest, ArityWeightedIdentityExhaustive) {
  // (a/n) C(n, a) = C(n-1, a-1), checked as a * C(n, a) = n * C(n-1, a-1).
  for (int n = 1; n <= 30; ++n)
    for (int a = 1; a <= n; ++a) EXPECT_EQ(Count(a) * binom(n, a), Count(n) * binom(n - 1, a - 1));
}

TEST(BinomTest, GuardAndWidth) {
  EXPECT_THROW(binom(10, 5, Count(251)), CapacityError);
  EXPECT_EQ(binom(10, 5, Count(252)), Count(252));
  // C(130, 65) is the largest central coefficient below 2^127.
  EXPECT_NO_THROW(binom(130, 65));
  EXPECT_THROW(binom(131, 65), CapacityError);
  EXPECT_THROW(binom(200, 100), CapacityError);
}

TEST(CountTest, CheckedArithmetic) {
  const Count big = Count::from_raw(~u128{0});
  EXPECT_THROW(big + Count(1), CapacityError);
  EXPECT_THROW(big * Count(2), CapacityError);
  EXPECT_THROW(Count(1) - Count(2), std::domain_error);
  EXPECT_EQ(big.to_string(), "340282366920938463463374607431768211455");
  EXPECT_EQ(to_string(static_cast<i128>(-42)), "-42");
  EXPECT_THROW(Count::power_of_two(64).to_u64(), CapacityError);
}

TEST(SubsetRankTest, Examples) {
  EXPECT_EQ(subset_rank(std::vector{0, 1}, 2, 4).rank, Count(0));
  EXPECT_EQ(subset_rank(std::vector{2, 3}, 2, 4).rank, Count(5));
  EXPECT_EQ(subset_rank(std::vector{0, 3}, 2, 4).rank, Count(3));
  EXPECT_EQ(subset_unrank(Count(0), 4, 2), (std::vector{0, 1}));
  EXPECT_EQ(subset_unrank(Count(5), 4, 2), (std::vector{2, 3}));
}

TEST(SubsetRankTest, UnrankMatchesColexEnumeration) {
  const auto all = colex_subsets(4, 2);
  ASSERT_EQ(all.size(), 6u);
  EXPECT_EQ(all[3], (std::vector{0, 3}));
  EXPECT_EQ(subset_unrank(Count(3), 4, 2), all[3]);
}

TEST(SubsetRankTest, Errors) {
  EXPECT_THROW(subset_rank(std::vector{1, 1}, 2, 4), InputError);
  EXPECT_THROW(subset_rank(std::vector{2, 1}, 2, 4), InputError);
  EXPECT_THROW(subset_rank(std::vector{0, 4}, 2, 4), InputError);
  EXPECT_THROW(subset_rank(std::vector{0}, 2, 4), InputError);
  EXPECT_THROW(subset_unrank(Count(6), 4, 2), InputError);
}

TEST(SubsetRankTest, RoundTripExhaustive) {
  for (int n = 0; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto all = colex_subsets(n, k);
      ASSERT_EQ(Count(all.size()), binom(n, k));
      for (std::size_t r = 0; r < all.size(); ++r) {
        EXPECT_EQ(subset_rank(all[r], k, n).rank, Count(r));
        EXPECT_EQ(subset_unrank(Count(r), n, k), all[r]);
      }
    }
  }
}

TEST(SelectionRankTest, Examples) {
  const Shape s = Shape::make({2, 2}, {1, 1});
  EXPECT_EQ(selection_rank({{0}, {0}}, s), Count(0));
  EXPECT_EQ(selection_rank({{1}, {1}}, s), Count(3));
  EXPECT_EQ(selection_unrank(Count(2), s), (Selection{{0}, {1}}));
  EXPECT_THROW(selection_rank({{0, 1}, {0}}, s), InputError);
  EXPECT_THROW(selection_rank({{0}}, s), InputError);
}

TEST(SelectionRankTest, MixedRadixOrderMatchesNestedLoops) {
  // Part 0 varies fastest.
  const Shape s = Shape::make({2, 2}, {1, 1});
  std::vector<Selection> order;
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a) order.push_back({{a}, {b}});
  for (std::size_t r = 0; r < order.size(); ++r) EXPECT_EQ(selection_unrank(Count(r), s), order[r]);
}

TEST(SelectionRankTest, BijectionAndCursor) {
  const std::vector<std::pair<std::vector<int>, std::vector<int>>> shapes = {
      {{2, 2}, {1, 1}}, {{3, 2}, {2, 1}}, {{4, 3, 2}, {2, 1, 1}}, {{6, 5}, {3, 2}}, {{7}, {3}}, {{3, 3, 3}, {3, 1, 2}}};
  for (const auto& [n, a] : shapes) {
    const Shape s = Shape::make(n, a);
    const auto total = s.total_arcs().to_u64();
    ASSERT_LE(total, 10000u);
    std::set<Count> seen;
    SelectionCursor cursor(s);
    for (std::uint64_t r = 0; r < total; ++r) {
      const Selection sel = selection_unrank(Count(r), s);
      EXPECT_EQ(cursor.selection(), sel);
      seen.insert(selection_rank(sel, s));
      EXPECT_EQ(cursor.advance(), r + 1 < total);
    }
    EXPECT_EQ(seen.size(), total);
    EXPECT_EQ(*seen.rbegin(), Count(total - 1));
  }
}

TEST(ShapeTest, Quantities) {
  const Shape s = Shape::make({3, 2}, {2, 1});
  EXPECT_EQ(s.total_arcs(), Count(6));
  EXPECT_EQ(s.arcs_through(0), Count(4));
  EXPECT_EQ(s.arcs_through(1), Count(3));
  EXPECT_EQ(s.arc_length(), 3);
  EXPECT_EQ(s.vertex_count(), 5);
  EXPECT_EQ(s.vertex_offset(1), 3);
}

TEST(ShapeTest, Rejections) {
  EXPECT_THROW(Shape::make({}, {}), InputError);
  EXPECT_THROW(Shape::make({2, 2}, {1}), InputError);
  EXPECT_THROW(Shape::make({2}, {0}), InputError);
  EXPECT_THROW(Shape::make({2}, {3}), InputError);
  EXPECT_THROW(Shape::make({10, 10}, {5, 5}, Count(1000)), CapacityError);
}

}  // namespace
}  // namespace hts
