#pragma once

#include <cstddef>
#include <vector>

#include "hts/combinatorics.hpp"

namespace hts {

/// Instance signature of a k-partite hypertournament: part sizes n_i and the
/// number alpha_i of vertices every arc takes from part i.
///
/// Invariants (checked by make): k >= 1, 1 <= alpha_i <= n_i, and the total
/// arc count prod_i C(n_i, alpha_i) within the magnitude guard. Parts are
/// 0-based in code.
class Shape {
 public:
  static Shape make(std::vector<int> sizes, std::vector<int> arities, Count guard = kDefaultGuard);

  int parts() const { return static_cast<int>(sizes_.size()); }
  int size(int part) const { return sizes_[static_cast<std::size_t>(part)]; }
  int arity(int part) const { return arities_[static_cast<std::size_t>(part)]; }
  const std::vector<int>& sizes() const { return sizes_; }
  const std::vector<int>& arities() const { return arities_; }

  /// Number of vertices in one arc, sum_i alpha_i.
  int arc_length() const { return arc_length_; }
  int vertex_count() const { return vertex_count_; }
  /// Index of (part, 0) in a flat vertex numbering.
  int vertex_offset(int part) const { return offsets_[static_cast<std::size_t>(part)]; }

  /// C(n_i, alpha_i): the radix of part i in selection ranks.
  Count part_selections(int part) const { return radices_[static_cast<std::size_t>(part)]; }
  /// prod_i C(n_i, alpha_i).
  Count total_arcs() const { return total_; }
  /// C(n_i - 1, alpha_i - 1) * prod_{t != i} C(n_t, alpha_t).
  Count arcs_through(int part) const { return through_[static_cast<std::size_t>(part)]; }
  Count guard() const { return guard_; }

  /// Same shape with n_part replaced.
  Shape with_size(int part, int new_size) const;

  friend bool operator==(const Shape& a, const Shape& b) {
    return a.sizes_ == b.sizes_ && a.arities_ == b.arities_;
  }

 private:
  Shape() = default;

  std::vector<int> sizes_;
  std::vector<int> arities_;
  std::vector<int> offsets_;
  std::vector<Count> radices_;
  std::vector<Count> through_;
  Count total_;
  Count guard_ = kDefaultGuard;
  int arc_length_ = 0;
  int vertex_count_ = 0;
};

/// One alpha_i-subset of each part, each sorted ascending.
using Selection = std::vector<std::vector<int>>;

/// Mixed-radix rank: sum_i colex_i * prod_{t < i} C(n_t, alpha_t). Part 0 is
/// the least significant digit. Throws InputError on arity mismatch.
Count selection_rank(const Selection& selection, const Shape& shape);
Selection selection_unrank(Count rank, const Shape& shape);

/// Walks selections in rank order without re-ranking: per part, the next
/// colex subset, with carries into the next part.
class SelectionCursor {
 public:
  explicit SelectionCursor(const Shape& shape, Count start = Count(0));

  const Selection& selection() const { return current_; }
  /// Moves to the next rank; returns false (and wraps to rank 0) after the last.
  bool advance();

 private:
  const Shape* shape_;
  Selection current_;
};

}  // namespace hts
