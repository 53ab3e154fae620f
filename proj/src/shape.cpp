#include "hts/shape.hpp"

#include <string>

#include "hts/errors.hpp"

namespace hts {

Shape Shape::make(std::vector<int> sizes, std::vector<int> arities, Count guard) {
  if (sizes.empty()) throw InputError("shape: k must be at least 1");
  if (sizes.size() != arities.size())
    throw InputError("shape: " + std::to_string(sizes.size()) + " part sizes but " +
                     std::to_string(arities.size()) + " arities");
  Shape s;
  s.guard_ = guard;
  s.total_ = Count(1);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (arities[i] < 1 || arities[i] > sizes[i])
      throw InputError("shape: part " + std::to_string(i + 1) + " needs 1 <= alpha <= n, got n=" +
                       std::to_string(sizes[i]) + " alpha=" + std::to_string(arities[i]));
    s.offsets_.push_back(s.vertex_count_);
    s.vertex_count_ += sizes[i];
    s.arc_length_ += arities[i];
    s.radices_.push_back(binom(sizes[i], arities[i], guard));
    s.total_ = s.total_ * s.radices_.back();
    enforce_guard(s.total_, guard, "total arc count");
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    Count through = binom(sizes[i] - 1, arities[i] - 1, guard);
    for (std::size_t t = 0; t < sizes.size(); ++t)
      if (t != i) through = through * s.radices_[t];
    s.through_.push_back(through);
  }
  s.sizes_ = std::move(sizes);
  s.arities_ = std::move(arities);
  return s;
}

Shape Shape::with_size(int part, int new_size) const {
  auto sizes = sizes_;
  sizes.at(static_cast<std::size_t>(part)) = new_size;
  return make(std::move(sizes), arities_, guard_);
}

Count selection_rank(const Selection& selection, const Shape& shape) {
  if (static_cast<int>(selection.size()) != shape.parts())
    throw InputError("selection_rank: selection has " + std::to_string(selection.size()) +
                     " parts, shape has " + std::to_string(shape.parts()));
  Count rank(0);
  Count weight(1);
  for (int i = 0; i < shape.parts(); ++i) {
    const auto& subset = selection[static_cast<std::size_t>(i)];
    rank += subset_rank(subset, shape.arity(i), shape.size(i)).rank * weight;
    weight *= shape.part_selections(i);
  }
  return rank;
}

Selection selection_unrank(Count rank, const Shape& shape) {
  if (rank >= shape.total_arcs())
    throw InputError("selection_unrank: rank " + rank.to_string() + " out of range");
  Selection out(static_cast<std::size_t>(shape.parts()));
  for (int i = 0; i < shape.parts(); ++i) {
    Count radix = shape.part_selections(i);
    out[static_cast<std::size_t>(i)] = subset_unrank(rank % radix, shape.size(i), shape.arity(i));
    rank = rank / radix;
  }
  return out;
}

SelectionCursor::SelectionCursor(const Shape& shape, Count start)
    : shape_(&shape), current_(selection_unrank(start, shape)) {}

bool SelectionCursor::advance() {
  for (int i = 0; i < shape_->parts(); ++i) {
    auto& c = current_[static_cast<std::size_t>(i)];
    const int k = static_cast<int>(c.size());
    const int n = shape_->size(i);
    int j = 0;
    while (j < k && c[static_cast<std::size_t>(j)] + 1 == (j + 1 < k ? c[static_cast<std::size_t>(j + 1)] : n)) ++j;
    if (j < k) {
      ++c[static_cast<std::size_t>(j)];
      for (int t = 0; t < j; ++t) c[static_cast<std::size_t>(t)] = t;
      return true;
    }
    for (int t = 0; t < k; ++t) c[static_cast<std::size_t>(t)] = t;
  }
  return false;
}

}  // namespace hts
