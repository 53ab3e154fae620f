#include "hts/oracle.hpp"

#include <algorithm>
#include <string>

#include "hts/criteria.hpp"
#include "hts/errors.hpp"
#include "hts/parallel.hpp"

namespace hts {

std::uint64_t assignment_count(const Shape& shape, std::uint64_t budget) {
  const auto base = static_cast<std::uint64_t>(shape.arc_length());
  const Count selections = shape.total_arcs();
  if (base == 1) return 1;
  Count count(1);
  bool over = false;
  for (Count done(0); done < selections; done += Count(1)) {
    count = count * Count(base);
    if (count > Count(budget)) {
      over = true;
      break;
    }
  }
  if (!over) return count.to_u64();
  // Exact value for the message when it fits 128 bits, otherwise a power.
  std::string required;
  try {
    Count exact(1);
    for (Count done(0); done < selections; done += Count(1)) exact = exact * Count(base);
    required = exact.to_string();
  } catch (const CapacityError&) {
    required = std::to_string(base) + "^" + selections.to_string();
  }
  throw BudgetExceeded("enumeration needs " + required + " assignments, budget is " + std::to_string(budget),
                       required);
}

namespace {

/// Flat vertex numbers of each selection, ascending, indexed by rank.
std::vector<std::vector<int>> selection_members(const Shape& shape) {
  const std::size_t total = dense_arc_count(shape);
  std::vector<std::vector<int>> out;
  out.reserve(total);
  SelectionCursor cursor(shape);
  for (std::size_t rank = 0; rank < total; ++rank, cursor.advance()) {
    std::vector<int> flat;
    for (VertexId v : selection_vertices(cursor.selection())) flat.push_back(shape.vertex_offset(v.part) + v.index);
    out.push_back(std::move(flat));
  }
  return out;
}

std::vector<VertexId> flat_to_vertex(const Shape& shape) {
  std::vector<VertexId> out;
  for (int i = 0; i < shape.parts(); ++i)
    for (int j = 0; j < shape.size(i); ++j) out.push_back({i, j});
  return out;
}

struct TallySets {
  std::set<ListTuple> losing;
  std::set<ListTuple> score;
};

/// Records the sorted tuples of one assignment's loss counts.
class TupleSink {
 public:
  TupleSink(const Shape& shape, bool want_losing, bool want_score)
      : shape_(shape), want_losing_(want_losing), want_score_(want_score) {
    for (int i = 0; i < shape.parts(); ++i) through_.push_back(shape.arcs_through(i).to_i64());
  }

  void record(const std::vector<Score>& losses, TallySets& out) {
    ListTuple tuple(static_cast<std::size_t>(shape_.parts()));
    if (want_losing_) {
      for (int i = 0; i < shape_.parts(); ++i) {
        auto first = losses.begin() + shape_.vertex_offset(i);
        auto& list = tuple[static_cast<std::size_t>(i)];
        list.assign(first, first + shape_.size(i));
        std::sort(list.begin(), list.end());
      }
      out.losing.insert(tuple);
    }
    if (want_score_) {
      for (int i = 0; i < shape_.parts(); ++i) {
        auto& list = tuple[static_cast<std::size_t>(i)];
        list.clear();
        for (int j = 0; j < shape_.size(i); ++j)
          list.push_back(through_[static_cast<std::size_t>(i)] - losses[static_cast<std::size_t>(shape_.vertex_offset(i) + j)]);
        std::sort(list.begin(), list.end());
      }
      out.score.insert(std::move(tuple));
    }
  }

 private:
  const Shape& shape_;
  bool want_losing_;
  bool want_score_;
  std::vector<Score> through_;
};

/// Visits assignment ranks [lo, hi) with incremental loss counts.
void tally_range(const Shape& shape, const std::vector<std::vector<int>>& members, std::uint64_t lo, std::uint64_t hi,
                 TupleSink& sink, TallySets& out) {
  if (lo >= hi) return;
  const auto base = static_cast<std::uint64_t>(shape.arc_length());
  std::vector<int> digits(members.size(), 0);
  std::uint64_t rest = lo;
  for (auto& d : digits) {
    d = static_cast<int>(rest % base);
    rest /= base;
  }
  std::vector<Score> losses(static_cast<std::size_t>(shape.vertex_count()), 0);
  for (std::size_t r = 0; r < members.size(); ++r)
    ++losses[static_cast<std::size_t>(members[r][static_cast<std::size_t>(digits[r])])];

  for (std::uint64_t a = lo; a < hi; ++a) {
    sink.record(losses, out);
    for (std::size_t r = 0; r < members.size(); ++r) {
      auto& d = digits[r];
      --losses[static_cast<std::size_t>(members[r][static_cast<std::size_t>(d)])];
      if (static_cast<std::uint64_t>(++d) < base) {
        ++losses[static_cast<std::size_t>(members[r][static_cast<std::size_t>(d)])];
        break;
      }
      d = 0;
      ++losses[static_cast<std::size_t>(members[r][0])];
    }
  }
}

TallySets tally(const Shape& shape, bool want_losing, bool want_score, EnumerationOptions options, bool serial) {
  const std::uint64_t count = assignment_count(shape, options.budget);
  const auto members = selection_members(shape);
  TallySets merged;
  if (serial) {
    TupleSink sink(shape, want_losing, want_score);
    tally_range(shape, members, 0, count, sink, merged);
    return merged;
  }
  const int workers = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(resolve_jobs(options.jobs)), count));
  std::vector<TallySets> partial(static_cast<std::size_t>(workers));
#pragma omp parallel for num_threads(workers) schedule(static)
  for (int w = 0; w < workers; ++w) {
    TupleSink sink(shape, want_losing, want_score);
    const Slice s = slice_of(static_cast<std::size_t>(count), workers, w);
    tally_range(shape, members, s.begin, s.end, sink, partial[static_cast<std::size_t>(w)]);
  }
  for (auto& p : partial) {
    merged.losing.merge(p.losing);
    merged.score.merge(p.score);
  }
  return merged;
}

AchievableSet make_set(const Shape& shape, ListKind kind, std::set<ListTuple> lists, std::uint64_t count) {
  return {shape, kind, std::move(lists), Count(count)};
}

}  // namespace

AssignmentStream::AssignmentStream(const Shape& shape, std::uint64_t budget)
    : shape_(shape), count_(assignment_count(shape, budget)) {
  const auto flat = flat_to_vertex(shape);
  for (const auto& sel : selection_members(shape)) {
    std::vector<VertexId> vs;
    for (int f : sel) vs.push_back(flat[static_cast<std::size_t>(f)]);
    members_.push_back(std::move(vs));
  }
  digits_.assign(members_.size(), 0);
}

std::optional<Hypertournament> AssignmentStream::next() {
  if (emitted_ == count_) return std::nullopt;
  std::vector<VertexId> losers;
  losers.reserve(members_.size());
  for (std::size_t r = 0; r < members_.size(); ++r) losers.push_back(members_[r][static_cast<std::size_t>(digits_[r])]);
  ++emitted_;
  for (auto& d : digits_) {
    if (++d < shape_.arc_length()) break;
    d = 0;
  }
  return Hypertournament::from_losers(shape_, losers);
}

AssignmentStream enumerate_assignments(const Shape& shape, std::uint64_t budget) {
  return AssignmentStream(shape, budget);
}

AchievableSet achievable_losing_lists(const Shape& shape, EnumerationOptions options) {
  auto sets = tally(shape, true, false, options, false);
  return make_set(shape, ListKind::losing, std::move(sets.losing), assignment_count(shape, options.budget));
}

AchievableSet achievable_score_lists(const Shape& shape, EnumerationOptions options) {
  auto sets = tally(shape, false, true, options, false);
  return make_set(shape, ListKind::score, std::move(sets.score), assignment_count(shape, options.budget));
}

AchievableSet achievable_lists_serial(const Shape& shape, ListKind kind, std::uint64_t budget) {
  const bool losing = kind == ListKind::losing;
  auto sets = tally(shape, losing, !losing, {budget, 1}, true);
  return make_set(shape, kind, std::move(losing ? sets.losing : sets.score), assignment_count(shape, budget));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw InputError("uniform_below: empty range");
  // 2^64 mod bound, computed without 128-bit arithmetic.
  const std::uint64_t skip = (0 - bound) % bound;
  std::uint64_t x = rng();
  while (x < skip) x = rng();
  return x % bound;
}

Hypertournament random_hypertournament(const Shape& shape, std::uint64_t seed, RandomMode mode) {
  const std::size_t total = dense_arc_count(shape);
  std::mt19937_64 rng(seed);
  std::vector<Arc> arcs;
  arcs.reserve(total);
  SelectionCursor cursor(shape);
  for (std::size_t rank = 0; rank < total; ++rank, cursor.advance()) {
    auto vertices = selection_vertices(cursor.selection());
    if (mode == RandomMode::loser_only) {
      const auto d = uniform_below(rng, vertices.size());
      arcs.push_back(canonical_arc(cursor.selection(), vertices[d]));
    } else {
      for (std::size_t i = vertices.size() - 1; i >= 1; --i) std::swap(vertices[i], vertices[uniform_below(rng, i + 1)]);
      arcs.push_back(Arc{std::move(vertices)});
    }
  }
  return Hypertournament(shape, std::move(arcs));
}

namespace {

void lists_of_part(int length, Score bound, ScoreList& current, std::vector<ScoreList>& out) {
  if (static_cast<int>(current.size()) == length) {
    out.push_back(current);
    return;
  }
  const Score from = current.empty() ? 0 : current.back();
  for (Score v = from; v <= bound; ++v) {
    current.push_back(v);
    lists_of_part(length, bound, current, out);
    current.pop_back();
  }
}

Score sum_of(const ScoreList& list) {
  Score s = 0;
  for (Score v : list) s += v;
  return s;
}

}  // namespace

std::vector<ListTuple> bounded_list_tuples(const Shape& shape, const std::vector<Score>& bound, Score total) {
  const auto k = static_cast<std::size_t>(shape.parts());
  std::vector<std::vector<ScoreList>> per_part(k);
  std::vector<Score> max_rest(k + 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    ScoreList scratch;
    lists_of_part(shape.size(static_cast<int>(i)), bound[i], scratch, per_part[i]);
  }
  for (std::size_t i = k; i-- > 0;) max_rest[i] = max_rest[i + 1] + bound[i] * shape.size(static_cast<int>(i));

  std::vector<ListTuple> out;
  ListTuple current;
  auto recurse = [&](auto&& self, std::size_t part, Score remaining) -> void {
    if (part == k) {
      if (remaining == 0) out.push_back(current);
      return;
    }
    for (const auto& list : per_part[part]) {
      const Score left = remaining - sum_of(list);
      if (left < 0 || left > max_rest[part + 1]) continue;
      current.push_back(list);
      self(self, part + 1, left);
      current.pop_back();
    }
  };
  recurse(recurse, 0, total);
  return out;
}

namespace {

SideReport compare_side(const Shape& shape, ListKind kind, const std::set<ListTuple>& achievable,
                        const std::vector<ListTuple>& candidates, int jobs) {
  std::vector<char> accepted(candidates.size(), 0);
  const int workers = resolve_jobs(jobs);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 16)
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    ScoreLists lists{kind, candidates[c]};
    auto result = kind == ListKind::losing ? check_losing_lists(shape, lists) : check_score_lists(shape, lists);
    accepted[c] = result.valid ? 1 : 0;
  }
  SideReport report;
  report.candidates = candidates.size();
  report.achievable = achievable.size();
  std::set<ListTuple> accepted_set;
  for (std::size_t c = 0; c < candidates.size(); ++c)
    if (accepted[c]) accepted_set.insert(candidates[c]);
  report.accepted = accepted_set.size();
  std::set_difference(accepted_set.begin(), accepted_set.end(), achievable.begin(), achievable.end(),
                      std::back_inserter(report.only_accepted));
  std::set_difference(achievable.begin(), achievable.end(), accepted_set.begin(), accepted_set.end(),
                      std::back_inserter(report.only_achievable));
  return report;
}

}  // namespace

CrossValidationReport cross_validate(const Shape& shape, EnumerationOptions options) {
  auto sets = tally(shape, true, true, options, false);
  std::vector<Score> bound;
  for (int i = 0; i < shape.parts(); ++i) bound.push_back(shape.arcs_through(i).to_i64());
  const Score arcs = shape.total_arcs().to_i64();
  const Score score_total = (shape.arc_length() - 1) * arcs;

  CrossValidationReport report;
  report.assignments = Count(assignment_count(shape, options.budget));
  report.losing = compare_side(shape, ListKind::losing, sets.losing, bounded_list_tuples(shape, bound, arcs), options.jobs);
  report.score =
      compare_side(shape, ListKind::score, sets.score, bounded_list_tuples(shape, bound, score_total), options.jobs);
  return report;
}

}  // namespace hts
