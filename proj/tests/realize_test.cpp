#include <algorithm>
#include <vector>

#include "gtest/gtest.h"
#include "hts/errors.hpp"
#include "hts/oracle.hpp"
#include "hts/realize.hpp"

namespace hts {

void PrintTo(const VertexId& v, std::ostream* os) { *os << to_string(v); }

namespace {

ScoreLists losing(std::vector<ScoreList> t) { return {ListKind::losing, std::move(t)}; }

const Shape kSquare = Shape::make({2, 2}, {1, 1});
const VertexId u11{0, 0}, u12{0, 1}, u21{1, 0}, u22{1, 1};

TEST(SaturateTest, SingleStep) {
  const auto [out, log] = saturate(kSquare, losing({{1, 1}, {1, 1}}));
  EXPECT_EQ(out, losing({{1, 2}, {0, 1}}));
  EXPECT_EQ(log.pivot, 0);
  ASSERT_EQ(log.steps.size(), 1u);
  EXPECT_EQ(log.steps[0], (TransformStep{u12, u21}));
}

TEST(SaturateTest, AlreadySaturatedIsIdentity) {
  const auto input = losing({{0, 2}, {1, 1}});
  const auto [out, log] = saturate(kSquare, input);
  EXPECT_EQ(out, input);
  EXPECT_TRUE(log.steps.empty());
}

TEST(SaturateTest, RejectsInvalidInput) {
  EXPECT_THROW(saturate(kSquare, losing({{0, 2}, {0, 2}})), InvalidLists);
  EXPECT_THROW(saturate(kSquare, losing({{1, 1}, {1, 1}}), 2), InputError);
}

TEST(RealizeInductiveTest, PeelsSaturatedVertex) {
  const auto m = realize_inductive(kSquare, losing({{0, 2}, {1, 1}}));
  EXPECT_EQ(losing_scores(m), losing({{0, 2}, {1, 1}}));
  // Arcs through u12 have it last; the remaining two come from the smaller shape.
  EXPECT_EQ(m.arc(1).loser(), u12);
  EXPECT_EQ(m.arc(3).loser(), u12);
  EXPECT_EQ(m.arc(0).loser(), u21);
  EXPECT_EQ(m.arc(2).loser(), u22);
}

TEST(RealizeInductiveTest, SingleArcShape) {
  const Shape s = Shape::make({2, 1, 3}, {2, 1, 3});
  const auto m = realize_inductive(s, losing({{0, 0}, {0}, {0, 0, 1}}));
  ASSERT_EQ(m.arcs().size(), 1u);
  EXPECT_EQ(m.arc(0).loser(), (VertexId{2, 2}));
  EXPECT_EQ(m.arc(0).order.size(), 6u);
}

TEST(RealizeInductiveTest, UndoesSaturation) {
  const auto m = realize_inductive(kSquare, losing({{1, 1}, {1, 1}}));
  EXPECT_TRUE(validate(m).ok());
  EXPECT_EQ(losing_by_vertex(m), (VertexTable{{1, 1}, {1, 1}}));
}

TEST(RealizeInductiveTest, ForcedAssignment) {
  const auto m = realize_inductive(kSquare, losing({{0, 0}, {2, 2}}));
  EXPECT_EQ(losing_by_vertex(m), (VertexTable{{0, 0}, {2, 2}}));
  for (const auto& arc : m.arcs()) EXPECT_EQ(arc.loser().part, 1);
}

TEST(RealizeInductiveTest, RejectsInvalidInput) {
  EXPECT_THROW(realize_inductive(kSquare, losing({{0, 2}, {0, 2}})), InvalidLists);
  EXPECT_THROW(realize_inductive(kSquare, losing({{0, 1}, {1, 1}})), InvalidLists);
}

TEST(RealizeFlowTest, Examples) {
  const auto m = realize_flow(kSquare, losing({{0, 2}, {1, 1}}));
  EXPECT_EQ(losing_by_vertex(m), (VertexTable{{0, 2}, {1, 1}}));

  const auto forced = realize_flow(kSquare, losing({{0, 0}, {2, 2}}));
  for (const auto& arc : forced.arcs()) EXPECT_EQ(arc.loser().part, 1);
  EXPECT_EQ(losing_by_vertex(forced), (VertexTable{{0, 0}, {2, 2}}));

  EXPECT_THROW(realize_flow(kSquare, losing({{0, 2}, {0, 2}})), Infeasible);
  EXPECT_THROW(realize_flow(kSquare, losing({{0, 1}, {1, 1}})), Infeasible);
}

struct ShapeCase {
  std::vector<int> n;
  std::vector<int> alpha;
};

// Every shape here has at most 64 arcs.
const std::vector<ShapeCase> kExhaustive = {
    {{2, 2}, {1, 1}},    {{3, 2}, {1, 1}},       {{3, 2}, {2, 1}},    {{2, 2, 2}, {1, 1, 1}},
    {{3, 3}, {1, 1}},    {{4, 2}, {2, 1}},       {{4, 3}, {2, 1}},    {{4, 4}, {1, 1}},
    {{5}, {2}},          {{6}, {3}},             {{5}, {4}},          {{3, 3, 2}, {1, 2, 1}},
    {{2, 2, 2, 2}, {1, 1, 1, 1}}, {{3, 1, 2}, {2, 1, 1}}, {{4, 3}, {3, 2}}, {{2, 3}, {2, 2}}};

std::vector<Score> bounds_of(const Shape& s) {
  std::vector<Score> b;
  for (int i = 0; i < s.parts(); ++i) b.push_back(s.arcs_through(i).to_i64());
  return b;
}

TEST(RealizePropertyTest, RoundTripAndFlowOracleExhaustive) {
  for (const auto& c : kExhaustive) {
    const Shape s = Shape::make(c.n, c.alpha);
    ASSERT_LE(s.total_arcs(), Count(64));
    const auto candidates = bounded_list_tuples(s, bounds_of(s), s.total_arcs().to_i64());
    std::size_t accepted = 0;
    for (const auto& tuple : candidates) {
      const ScoreLists r{ListKind::losing, tuple};
      const bool valid = check_losing_lists(s, r).valid;
      bool feasible = true;
      try {
        const auto m = realize_flow(s, r);
        EXPECT_EQ(losing_by_vertex(m), tuple);
      } catch (const Infeasible&) {
        feasible = false;
      }
      EXPECT_EQ(valid, feasible);
      if (!valid) continue;
      ++accepted;
      const auto m = realize_inductive(s, r);
      EXPECT_TRUE(validate(m).ok());
      EXPECT_EQ(losing_scores(m), r);
    }
    EXPECT_GT(accepted, 0u);
  }
}

TEST(SaturatePropertyTest, StepsReplayThroughAcceptedStates) {
  for (const auto& c : kExhaustive) {
    const Shape s = Shape::make(c.n, c.alpha);
    const auto bounds = bounds_of(s);
    for (const auto& tuple : bounded_list_tuples(s, bounds, s.total_arcs().to_i64())) {
      const ScoreLists r{ListKind::losing, tuple};
      if (!check_losing_lists(s, r).valid) continue;
      for (int pivot = 0; pivot < s.parts(); ++pivot) {
        const auto [out, log] = saturate(s, r, pivot);
        EXPECT_EQ(out.lists[static_cast<std::size_t>(pivot)].back(), bounds[static_cast<std::size_t>(pivot)]);
        ScoreLists replay = r;
        for (const auto& step : log.steps) {
          EXPECT_EQ(step.incremented, (VertexId{pivot, s.size(pivot) - 1}));
          EXPECT_NE(step.decremented, step.incremented);
          ++replay.lists[static_cast<std::size_t>(step.incremented.part)][static_cast<std::size_t>(step.incremented.index)];
          --replay.lists[static_cast<std::size_t>(step.decremented.part)][static_cast<std::size_t>(step.decremented.index)];
          for (const auto& list : replay.lists) ASSERT_TRUE(std::is_sorted(list.begin(), list.end()));
          ASSERT_TRUE(check_losing_lists(s, replay).valid);
        }
        EXPECT_EQ(replay, out);
      }
    }
  }
}

TEST(RealizePropertyTest, RandomWitnessesOnLargerShapes) {
  const std::vector<ShapeCase> shapes = {{{6, 5}, {3, 2}}, {{5, 4, 3}, {2, 2, 1}}, {{9}, {4}}, {{4, 4, 4}, {2, 2, 2}}};
  std::uint64_t seed = 100;
  for (const auto& c : shapes) {
    const Shape s = Shape::make(c.n, c.alpha);
    for (int trial = 0; trial < 10; ++trial) {
      const auto source = random_hypertournament(s, seed++);
      const auto r = losing_scores(source);
      EXPECT_EQ(losing_scores(realize_inductive(s, r)), r);
      EXPECT_EQ(losing_scores(realize_flow(s, r)), r);
    }
  }
}

}  // namespace
}  // namespace hts
