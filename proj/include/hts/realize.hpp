#pragma once

#include <utility>
#include <vector>

#include "hts/criteria.hpp"
#include "hts/model.hpp"

namespace hts {

/// One saturation move: +1 to the last entry of the pivot list, -1 to the
/// first entry of a run in some list (another part if possible). Entries are
/// named by the vertex that carries them (entry j of list i is vertex (i, j)).
struct TransformStep {
  VertexId incremented;
  VertexId decremented;

  friend bool operator==(const TransformStep&, const TransformStep&) = default;
};

struct TransformLog {
  int pivot = 0;
  std::vector<TransformStep> steps;
};

/// Raises the last entry of list `pivot` to arcs_through(pivot) one unit at a
/// time. Each unit comes from the first candidate that keeps every prefix
/// inequality: run starts of the other lists (parts after the pivot in cyclic
/// order, last run first), then earlier run starts of the pivot list. Every
/// intermediate state is re-checked. Throws InvalidLists if the input is not
/// accepted and NoValidStep if no candidate works.
std::pair<ScoreLists, TransformLog> saturate(const Shape& shape, const ScoreLists& losing, int pivot = 0);

/// Builds a witness by induction on the size of one part: peel off the
/// vertex that loses every arc through it when its entry is saturated,
/// otherwise saturate first and walk the logged moves back, each by the
/// shortest chain of interchanges (usually a single one). Throws InvalidLists
/// for rejected input and RealizationGap if an undo finds no chain.
/// Vertex (i, j) receives entry j of list i.
Hypertournament realize_inductive(const Shape& shape, const ScoreLists& losing);

/// Picks a loser for every selection via maximum flow on the
/// selection/vertex network. Throws Infeasible when the lists cannot be met.
Hypertournament realize_flow(const Shape& shape, const ScoreLists& losing);

}  // namespace hts
