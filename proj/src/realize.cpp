#include "hts/realize.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <string>

namespace hts {

namespace {

const CheckOptions kStepCheck{.prune = true, .jobs = 1};

void require_accepted(const Shape& shape, const ScoreLists& losing, const char* who) {
  auto result = check_losing_lists(shape, losing, kStepCheck);
  if (!result.valid) throw InvalidLists(std::string(who) + ": lists fail the prefix inequalities", result);
}

/// Starts of the runs of equal entries, from the last run to the first.
std::vector<std::size_t> run_starts_descending(const ScoreList& list) {
  std::vector<std::size_t> out;
  for (std::size_t j = list.size(); j-- > 0;)
    if (j == 0 || list[j - 1] != list[j]) out.push_back(j);
  return out;
}

bool try_step(const Shape& shape, ScoreLists& current, TransformLog& log, VertexId inc, VertexId dec) {
  auto& dec_entry = current.lists[static_cast<std::size_t>(dec.part)][static_cast<std::size_t>(dec.index)];
  auto& inc_entry = current.lists[static_cast<std::size_t>(inc.part)][static_cast<std::size_t>(inc.index)];
  if (dec_entry == 0) return false;
  ++inc_entry;
  --dec_entry;
  const auto& inc_list = current.lists[static_cast<std::size_t>(inc.part)];
  const auto& dec_list = current.lists[static_cast<std::size_t>(dec.part)];
  if (std::is_sorted(inc_list.begin(), inc_list.end()) && std::is_sorted(dec_list.begin(), dec_list.end()) &&
      check_losing_lists(shape, current, kStepCheck).valid) {
    log.steps.push_back({inc, dec});
    return true;
  }
  --inc_entry;
  ++dec_entry;
  return false;
}

}  // namespace

std::pair<ScoreLists, TransformLog> saturate(const Shape& shape, const ScoreLists& losing, int pivot) {
  if (pivot < 0 || pivot >= shape.parts()) throw InputError("saturate: pivot part out of range");
  require_accepted(shape, losing, "saturate");
  const Score bound = shape.arcs_through(pivot).to_i64();
  const auto q = static_cast<std::size_t>(pivot);
  ScoreLists current = losing;
  TransformLog log{pivot, {}};
  const VertexId inc{pivot, shape.size(pivot) - 1};
  while (current.lists[q].back() < bound) {
    bool moved = false;
    // Other parts first, then earlier runs of the pivot list itself.
    for (int off = 1; off <= shape.parts() && !moved; ++off) {
      const int s = (pivot + off) % shape.parts();
      const auto& list = current.lists[static_cast<std::size_t>(s)];
      for (std::size_t t : run_starts_descending(list)) {
        if (s == pivot && t + 1 == list.size()) continue;
        if ((moved = try_step(shape, current, log, inc, {s, static_cast<int>(t)}))) break;
      }
    }
    if (!moved)
      throw NoValidStep("saturate: no move keeps the prefix inequalities with list " + std::to_string(pivot + 1) +
                        " at last entry " + std::to_string(current.lists[q].back()));
  }
  return {std::move(current), std::move(log)};
}

namespace {

std::vector<Arc> build(const Shape& shape, const ScoreLists& losing);

/// Arcs of the shape whose pivot part lost its last vertex, plus every arc
/// through that vertex with the vertex placed last.
std::vector<Arc> peel_last_vertex(const Shape& shape, const ScoreLists& losing, int pivot) {
  const auto q = static_cast<std::size_t>(pivot);
  const Shape smaller = shape.with_size(pivot, shape.size(pivot) - 1);
  ScoreLists rest = losing;
  rest.lists[q].pop_back();
  std::vector<Arc> inner = build(smaller, rest);

  const VertexId added{pivot, shape.size(pivot) - 1};
  const std::size_t total = dense_arc_count(shape);
  std::vector<Arc> arcs;
  arcs.reserve(total);
  // Selections avoiding the new vertex keep their relative order, so the
  // smaller shape's ranks come up as 0, 1, 2, ...
  std::size_t inner_rank = 0;
  SelectionCursor cursor(shape);
  for (std::size_t rank = 0; rank < total; ++rank, cursor.advance()) {
    const Selection& sel = cursor.selection();
    if (sel[q].back() == added.index)
      arcs.push_back(canonical_arc(sel, added));
    else
      arcs.push_back(inner.at(inner_rank++));
  }
  return arcs;
}

std::vector<Arc> build(const Shape& shape, const ScoreLists& losing) {
  int pivot = -1;
  for (int i = 0; i < shape.parts(); ++i) {
    if (shape.size(i) > shape.arity(i)) {
      pivot = i;
      break;
    }
  }
  if (pivot < 0) {
    // One selection; its loser is the single vertex with entry 1.
    Selection all(static_cast<std::size_t>(shape.parts()));
    std::optional<VertexId> loser;
    for (int i = 0; i < shape.parts(); ++i) {
      for (int j = 0; j < shape.size(i); ++j) {
        all[static_cast<std::size_t>(i)].push_back(j);
        if (losing.lists[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == 1) loser = VertexId{i, j};
      }
    }
    if (!loser) throw RealizationGap("realize_inductive: single-arc base case has no unit entry");
    return {canonical_arc(all, *loser)};
  }

  const Score bound = shape.arcs_through(pivot).to_i64();
  if (losing.lists[static_cast<std::size_t>(pivot)].back() == bound) return peel_last_vertex(shape, losing, pivot);

  auto [saturated, log] = saturate(shape, losing, pivot);
  Hypertournament m(shape, peel_last_vertex(shape, saturated, pivot));
  for (auto it = log.steps.rbegin(); it != log.steps.rend(); ++it) {
    try {
      transfer_loss_in_place(m, it->decremented, it->incremented);
    } catch (const NoEligibleArc&) {
      throw RealizationGap("realize_inductive: no chain moves a loss from " + to_string(it->incremented) +
                           " back to " + to_string(it->decremented) + " while undoing a saturation move");
    }
  }
  return m.arcs();
}

}  // namespace

Hypertournament realize_inductive(const Shape& shape, const ScoreLists& losing) {
  require_accepted(shape, losing, "realize_inductive");
  dense_arc_count(shape);
  Hypertournament m(shape, build(shape, losing));
  if (losing_by_vertex(m) != losing.lists)
    throw RealizationGap("realize_inductive: constructed witness does not reproduce the lists");
  return m;
}

namespace {

/// Dinic's algorithm on an explicit edge list.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : adj_(nodes), level_(nodes), next_(nodes) {}

  std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t cap) {
    adj_[from].push_back(edges_.size());
    edges_.push_back({to, cap});
    adj_[to].push_back(edges_.size());
    edges_.push_back({from, 0});
    return edges_.size() - 2;
  }

  std::int64_t run(std::size_t source, std::size_t sink) {
    std::int64_t flow = 0;
    while (levels(source, sink)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (std::int64_t pushed = push(source, sink, std::numeric_limits<std::int64_t>::max())) flow += pushed;
    }
    return flow;
  }

  bool saturated(std::size_t edge) const { return edges_[edge].cap == 0; }

 private:
  struct Edge {
    std::size_t to;
    std::int64_t cap;
  };

  bool levels(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> frontier;
    level_[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
      auto u = frontier.front();
      frontier.pop();
      for (auto e : adj_[u]) {
        if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          frontier.push(edges_[e].to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  // Augmenting paths are source -> selection -> vertex -> sink.
  std::int64_t push(std::size_t u, std::size_t sink, std::int64_t limit) {
    if (u == sink) return limit;
    for (auto& i = next_[u]; i < adj_[u].size(); ++i) {
      auto e = adj_[u][i];
      auto v = edges_[e].to;
      if (edges_[e].cap <= 0 || level_[v] != level_[u] + 1) continue;
      if (std::int64_t got = push(v, sink, std::min(limit, edges_[e].cap))) {
        edges_[e].cap -= got;
        edges_[e ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace

Hypertournament realize_flow(const Shape& shape, const ScoreLists& losing) {
  require_well_formed(shape, losing, ListKind::losing);
  const std::size_t total = dense_arc_count(shape);
  const auto vertices = static_cast<std::size_t>(shape.vertex_count());

  i128 sum = 0;
  for (const auto& list : losing.lists)
    for (Score r : list) sum += r;
  if (sum != static_cast<i128>(total))
    throw Infeasible("realize_flow: lists sum to " + to_string(sum) + ", shape has " + std::to_string(total) + " arcs");

  const std::size_t source = 0;
  const std::size_t first_sel = 1;
  const std::size_t first_vertex = first_sel + total;
  const std::size_t sink = first_vertex + vertices;
  MaxFlow flow(sink + 1);

  std::vector<std::vector<std::pair<std::size_t, VertexId>>> choice(total);
  SelectionCursor cursor(shape);
  for (std::size_t rank = 0; rank < total; ++rank, cursor.advance()) {
    flow.add_edge(source, first_sel + rank, 1);
    for (VertexId v : selection_vertices(cursor.selection())) {
      auto node = first_vertex + static_cast<std::size_t>(shape.vertex_offset(v.part) + v.index);
      choice[rank].push_back({flow.add_edge(first_sel + rank, node, 1), v});
    }
  }
  for (int i = 0; i < shape.parts(); ++i)
    for (int j = 0; j < shape.size(i); ++j) {
      Score r = losing.lists[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (r > 0) flow.add_edge(first_vertex + static_cast<std::size_t>(shape.vertex_offset(i) + j), sink, r);
    }

  const auto routed = flow.run(source, sink);
  if (routed != static_cast<std::int64_t>(total))
    throw Infeasible("realize_flow: maximum flow " + std::to_string(routed) + " falls short of " +
                     std::to_string(total) + " arcs");

  std::vector<VertexId> losers(total);
  for (std::size_t rank = 0; rank < total; ++rank)
    for (const auto& [edge, v] : choice[rank])
      if (flow.saturated(edge)) losers[rank] = v;
  return Hypertournament::from_losers(shape, losers);
}

}  // namespace hts
