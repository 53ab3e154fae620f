#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <string>
#include <vector>

#include "hts/shape.hpp"

namespace hts {

using Score = std::int64_t;
using ScoreList = std::vector<Score>;

enum class ListKind { losing, score };

const char* to_string(ListKind kind);

/// k lists, list i of length n_i, each non-decreasing. Only the criteria and
/// conversion entry points enforce the invariants; other producers sort.
struct ScoreLists {
  ListKind kind = ListKind::losing;
  std::vector<ScoreList> lists;

  friend bool operator==(const ScoreLists&, const ScoreLists&) = default;
};

/// Per-vertex values indexed [part][index], in vertex order (not sorted).
using VertexTable = std::vector<std::vector<Score>>;

/// Sorts each part's values into a ScoreLists.
ScoreLists sorted_lists(ListKind kind, VertexTable table);

struct VertexId {
  int part = 0;
  int index = 0;

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

/// "u{part+1},{index+1}", matching 1-based document notation.
std::string to_string(VertexId v);

/// Ordered vertex tuple; the last entry loses the arc. An empty order marks a
/// missing arc in a partially filled table.
struct Arc {
  std::vector<VertexId> order;

  const VertexId& loser() const { return order.back(); }
  bool empty() const { return order.empty(); }

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Vertices of a selection in ascending (part, index) order.
std::vector<VertexId> selection_vertices(const Selection& selection);

/// The arc of `selection` with `loser` last and every other vertex in
/// ascending (part, index) order. Throws InputError if loser is not selected.
Arc canonical_arc(const Selection& selection, VertexId loser);

/// Largest arc table held in memory; bigger shapes raise CapacityError.
inline constexpr std::uint64_t kMaxDenseArcs = std::uint64_t{1} << 26;
std::size_t dense_arc_count(const Shape& shape);

/// Dense arc table indexed by selection rank. Construction does not validate;
/// run validate() on tables that come from outside the library.
class Hypertournament {
 public:
  Hypertournament(Shape shape, std::vector<Arc> arcs) : shape_(std::move(shape)), arcs_(std::move(arcs)) {}

  /// One canonical arc per selection rank with the given loser.
  static Hypertournament from_losers(const Shape& shape, std::span<const VertexId> losers);

  const Shape& shape() const { return shape_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(std::size_t rank) const { return arcs_.at(rank); }

  friend bool operator==(const Hypertournament& a, const Hypertournament& b) {
    return a.shape_ == b.shape_ && a.arcs_ == b.arcs_;
  }

 private:
  friend std::size_t arc_swap_in_place(Hypertournament& m, VertexId a, VertexId b);
  friend std::vector<std::size_t> transfer_loss_in_place(Hypertournament& m, VertexId a, VertexId b);

  Shape shape_;
  std::vector<Arc> arcs_;
};

Count arcs_through(const Shape& shape, int part);

struct ValidationIssue {
  enum class Kind { missing, extra, length, out_of_range, duplicate_vertex, arity, mismatch };
  Kind kind;
  std::size_t rank;
  std::string detail;
};
const char* to_string(ValidationIssue::Kind kind);

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Lists every structural violation: table size, and per rank a missing arc,
/// wrong length, out-of-range or repeated vertices, wrong per-part arity, or a
/// vertex set different from selection_unrank(rank).
ValidationReport validate(const Hypertournament& m);

/// Losses per vertex. The parallel version splits the rank range over `jobs`
/// workers (<= 0: all cores); the serial one is the reference.
/// Both throw StructuralError on an arc without an in-range loser.
VertexTable losing_by_vertex(const Hypertournament& m, int jobs = 1);
VertexTable losing_by_vertex_serial(const Hypertournament& m);

/// Non-losing appearances per vertex, counted directly from the arcs.
VertexTable scores_by_vertex(const Hypertournament& m, int jobs = 1);

/// Sorted lists; validate() must pass, otherwise StructuralError.
ScoreLists losing_scores(const Hypertournament& m, int jobs = 1);
ScoreLists scores(const Hypertournament& m, int jobs = 1);

/// Moves one loss from b to a: picks the smallest-rank arc containing both
/// with b last and interchanges a and b in it. Returns the rank touched.
/// Throws NoEligibleArc when no such arc exists, InputError if a == b or a
/// vertex is out of range.
std::size_t arc_swap_in_place(Hypertournament& m, VertexId a, VertexId b);
Hypertournament arc_swap(const Hypertournament& m, VertexId a, VertexId b);

/// Moves one loss from b to a along the shortest alternating chain: b hands
/// an arc to some x1 in it, x1 hands one of its lost arcs to x2, and so on up
/// to a. Only b and a change their losing scores. A direct interchange is a
/// chain of length one. Returns the ranks touched, in chain order from b.
/// Throws NoEligibleArc when no chain exists.
std::vector<std::size_t> transfer_loss_in_place(Hypertournament& m, VertexId a, VertexId b);

}  // namespace hts
