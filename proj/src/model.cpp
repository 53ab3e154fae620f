#include "hts/model.hpp"

#include <algorithm>

#include "hts/errors.hpp"
#include "hts/parallel.hpp"

namespace hts {

const char* to_string(ListKind kind) { return kind == ListKind::losing ? "losing" : "score"; }

ScoreLists sorted_lists(ListKind kind, VertexTable table) {
  for (auto& list : table) std::sort(list.begin(), list.end());
  return {kind, std::move(table)};
}

std::string to_string(VertexId v) {
  return "u" + std::to_string(v.part + 1) + "," + std::to_string(v.index + 1);
}

std::vector<VertexId> selection_vertices(const Selection& selection) {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < selection.size(); ++i)
    for (int idx : selection[i]) out.push_back({static_cast<int>(i), idx});
  return out;
}

Arc canonical_arc(const Selection& selection, VertexId loser) {
  Arc arc;
  bool found = false;
  for (std::size_t i = 0; i < selection.size(); ++i) {
    for (int idx : selection[i]) {
      VertexId v{static_cast<int>(i), idx};
      if (v == loser)
        found = true;
      else
        arc.order.push_back(v);
    }
  }
  if (!found) throw InputError("canonical_arc: loser " + to_string(loser) + " is not in the selection");
  arc.order.push_back(loser);
  return arc;
}

std::size_t dense_arc_count(const Shape& shape) {
  if (shape.total_arcs() > Count(kMaxDenseArcs))
    throw CapacityError("arc table of " + shape.total_arcs().to_string() + " arcs exceeds the in-memory limit");
  return static_cast<std::size_t>(shape.total_arcs().to_u64());
}

Hypertournament Hypertournament::from_losers(const Shape& shape, std::span<const VertexId> losers) {
  const std::size_t total = dense_arc_count(shape);
  if (losers.size() != total)
    throw InputError("from_losers: " + std::to_string(losers.size()) + " losers for " + std::to_string(total) +
                     " selections");
  std::vector<Arc> arcs;
  arcs.reserve(total);
  SelectionCursor cursor(shape);
  for (std::size_t rank = 0; rank < total; ++rank) {
    arcs.push_back(canonical_arc(cursor.selection(), losers[rank]));
    cursor.advance();
  }
  return Hypertournament(shape, std::move(arcs));
}

Count arcs_through(const Shape& shape, int part) {
  if (part < 0 || part >= shape.parts()) throw InputError("arcs_through: part index out of range");
  return shape.arcs_through(part);
}

const char* to_string(ValidationIssue::Kind kind) {
  switch (kind) {
    case ValidationIssue::Kind::missing: return "missing";
    case ValidationIssue::Kind::extra: return "extra";
    case ValidationIssue::Kind::length: return "length";
    case ValidationIssue::Kind::out_of_range: return "out_of_range";
    case ValidationIssue::Kind::duplicate_vertex: return "duplicate_vertex";
    case ValidationIssue::Kind::arity: return "arity";
    case ValidationIssue::Kind::mismatch: return "mismatch";
  }
  return "unknown";
}

namespace {

bool in_range(const Shape& shape, VertexId v) {
  return v.part >= 0 && v.part < shape.parts() && v.index >= 0 && v.index < shape.size(v.part);
}

}  // namespace

ValidationReport validate(const Hypertournament& m) {
  using Kind = ValidationIssue::Kind;
  const Shape& shape = m.shape();
  const std::size_t total = dense_arc_count(shape);
  const auto& arcs = m.arcs();
  ValidationReport report;
  for (std::size_t rank = total; rank < arcs.size(); ++rank)
    report.issues.push_back({Kind::extra, rank, "arc beyond the last selection rank"});

  const auto length = static_cast<std::size_t>(shape.arc_length());
  SelectionCursor cursor(shape);
  for (std::size_t rank = 0; rank < total; ++rank, cursor.advance()) {
    if (rank >= arcs.size() || arcs[rank].empty()) {
      report.issues.push_back({Kind::missing, rank, "no arc for this selection"});
      continue;
    }
    const Arc& arc = arcs[rank];
    if (arc.order.size() != length) {
      report.issues.push_back({Kind::length, rank,
                               "arc has " + std::to_string(arc.order.size()) + " entries, expected " +
                                   std::to_string(length)});
      continue;
    }
    auto sorted = arc.order;
    std::sort(sorted.begin(), sorted.end());
    if (!std::all_of(sorted.begin(), sorted.end(), [&](VertexId v) { return in_range(shape, v); })) {
      report.issues.push_back({Kind::out_of_range, rank, "arc names a vertex outside the shape"});
      continue;
    }
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      report.issues.push_back({Kind::duplicate_vertex, rank, "arc repeats a vertex"});
      continue;
    }
    bool arity_ok = true;
    for (int i = 0; i < shape.parts(); ++i) {
      auto c = std::count_if(sorted.begin(), sorted.end(), [i](VertexId v) { return v.part == i; });
      if (c != shape.arity(i)) arity_ok = false;
    }
    if (!arity_ok) {
      report.issues.push_back({Kind::arity, rank, "arc does not take alpha_i vertices from every part"});
      continue;
    }
    if (sorted != selection_vertices(cursor.selection()))
      report.issues.push_back({Kind::mismatch, rank, "arc vertex set differs from the selection at this rank"});
  }
  return report;
}

namespace {

VertexTable unflatten(const Shape& shape, const std::vector<Score>& flat) {
  VertexTable table(static_cast<std::size_t>(shape.parts()));
  for (int i = 0; i < shape.parts(); ++i) {
    auto first = flat.begin() + shape.vertex_offset(i);
    table[static_cast<std::size_t>(i)].assign(first, first + shape.size(i));
  }
  return table;
}

std::size_t flat_index(const Shape& shape, VertexId v) {
  return static_cast<std::size_t>(shape.vertex_offset(v.part) + v.index);
}

void require_loser(const Shape& shape, const Arc& arc, std::size_t rank) {
  if (arc.empty() || !in_range(shape, arc.loser()))
    throw StructuralError("arc at rank " + std::to_string(rank) + " has no valid loser");
}

void require_valid(const Hypertournament& m) {
  auto report = validate(m);
  if (!report.ok()) {
    const auto& first = report.issues.front();
    throw StructuralError("hypertournament invalid at rank " + std::to_string(first.rank) + ": " + first.detail +
                          " (" + std::to_string(report.issues.size()) + " issue(s))");
  }
}

}  // namespace

VertexTable losing_by_vertex_serial(const Hypertournament& m) {
  const Shape& shape = m.shape();
  std::vector<Score> flat(static_cast<std::size_t>(shape.vertex_count()), 0);
  for (std::size_t rank = 0; rank < m.arcs().size(); ++rank) {
    const Arc& arc = m.arcs()[rank];
    require_loser(shape, arc, rank);
    ++flat[flat_index(shape, arc.loser())];
  }
  return unflatten(shape, flat);
}

VertexTable losing_by_vertex(const Hypertournament& m, int jobs) {
  const Shape& shape = m.shape();
  const auto& arcs = m.arcs();
  for (std::size_t rank = 0; rank < arcs.size(); ++rank) require_loser(shape, arcs[rank], rank);
  auto flat = parallel_tally<Score>(arcs.size(), static_cast<std::size_t>(shape.vertex_count()), jobs,
                                    [&](std::size_t rank, std::vector<Score>& counts) {
                                      ++counts[flat_index(shape, arcs[rank].loser())];
                                    });
  return unflatten(shape, flat);
}

VertexTable scores_by_vertex(const Hypertournament& m, int jobs) {
  const Shape& shape = m.shape();
  const auto& arcs = m.arcs();
  for (std::size_t rank = 0; rank < arcs.size(); ++rank) {
    require_loser(shape, arcs[rank], rank);
    for (VertexId v : arcs[rank].order)
      if (!in_range(shape, v)) throw StructuralError("arc at rank " + std::to_string(rank) + " has an out-of-range vertex");
  }
  auto flat = parallel_tally<Score>(arcs.size(), static_cast<std::size_t>(shape.vertex_count()), jobs,
                                    [&](std::size_t rank, std::vector<Score>& counts) {
                                      const auto& order = arcs[rank].order;
                                      for (std::size_t pos = 0; pos + 1 < order.size(); ++pos)
                                        ++counts[flat_index(shape, order[pos])];
                                    });
  return unflatten(shape, flat);
}

ScoreLists losing_scores(const Hypertournament& m, int jobs) {
  require_valid(m);
  return sorted_lists(ListKind::losing, losing_by_vertex(m, jobs));
}

ScoreLists scores(const Hypertournament& m, int jobs) {
  require_valid(m);
  return sorted_lists(ListKind::score, scores_by_vertex(m, jobs));
}

std::size_t arc_swap_in_place(Hypertournament& m, VertexId a, VertexId b) {
  const Shape& shape = m.shape();
  if (!in_range(shape, a) || !in_range(shape, b)) throw InputError("arc_swap: vertex out of range");
  if (a == b) throw InputError("arc_swap: the two vertices must differ");
  for (std::size_t rank = 0; rank < m.arcs_.size(); ++rank) {
    auto& order = m.arcs_[rank].order;
    if (order.empty() || order.back() != b) continue;
    auto it = std::find(order.begin(), order.end(), a);
    if (it == order.end()) continue;
    std::iter_swap(it, order.end() - 1);
    return rank;
  }
  throw NoEligibleArc("arc_swap: no arc contains " + to_string(a) + " and " + to_string(b) + " with " +
                      to_string(b) + " last");
}

std::vector<std::size_t> transfer_loss_in_place(Hypertournament& m, VertexId a, VertexId b) {
  const Shape& shape = m.shape();
  if (!in_range(shape, a) || !in_range(shape, b)) throw InputError("transfer_loss: vertex out of range");
  if (a == b) throw InputError("transfer_loss: the two vertices must differ");
  auto id = [&](VertexId v) { return static_cast<std::size_t>(shape.vertex_offset(v.part) + v.index); };

  std::vector<std::vector<std::size_t>> lost(static_cast<std::size_t>(shape.vertex_count()));
  for (std::size_t rank = 0; rank < m.arcs_.size(); ++rank) {
    const auto& order = m.arcs_[rank].order;
    if (order.empty() || !in_range(shape, order.back())) throw StructuralError("transfer_loss: arc without a loser");
    lost[id(order.back())].push_back(rank);
  }

  // Breadth-first over vertices; reached[w] holds the arc w takes over.
  constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);
  std::vector<std::size_t> reached(lost.size(), kUnreached);
  std::vector<VertexId> frontier{b};
  reached[id(b)] = 0;
  while (!frontier.empty() && reached[id(a)] == kUnreached) {
    std::vector<VertexId> next;
    for (VertexId v : frontier)
      for (std::size_t rank : lost[id(v)])
        for (VertexId w : m.arcs_[rank].order)
          if (reached[id(w)] == kUnreached) {
            reached[id(w)] = rank;
            next.push_back(w);
          }
    frontier = std::move(next);
  }
  if (reached[id(a)] == kUnreached)
    throw NoEligibleArc("transfer_loss: no alternating chain from " + to_string(b) + " to " + to_string(a));

  std::vector<std::size_t> touched;
  for (VertexId w = a; w != b;) {
    const std::size_t rank = reached[id(w)];
    auto& order = m.arcs_[rank].order;
    const VertexId previous = order.back();
    std::iter_swap(std::find(order.begin(), order.end(), w), order.end() - 1);
    touched.push_back(rank);
    w = previous;
  }
  std::reverse(touched.begin(), touched.end());
  return touched;
}

Hypertournament arc_swap(const Hypertournament& m, VertexId a, VertexId b) {
  Hypertournament out = m;
  arc_swap_in_place(out, a, b);
  return out;
}

}  // namespace hts
