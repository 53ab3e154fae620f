#include "hts/criteria.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <string>

#include "hts/parallel.hpp"

namespace hts {

void require_well_formed(const Shape& shape, const ScoreLists& lists, ListKind kind) {
  if (lists.kind != kind)
    throw InputError(std::string("expected ") + to_string(kind) + " lists, got " + to_string(lists.kind));
  if (static_cast<int>(lists.lists.size()) != shape.parts())
    throw InputError("expected " + std::to_string(shape.parts()) + " lists, got " + std::to_string(lists.lists.size()));
  for (int i = 0; i < shape.parts(); ++i) {
    const auto& list = lists.lists[static_cast<std::size_t>(i)];
    const std::string name = "list " + std::to_string(i + 1);
    if (static_cast<int>(list.size()) != shape.size(i))
      throw InputError(name + " has " + std::to_string(list.size()) + " entries, part size is " +
                       std::to_string(shape.size(i)));
    if (!list.empty() && list.front() < 0) throw InputError(name + " has a negative entry");
    if (!std::is_sorted(list.begin(), list.end())) throw InputError(name + " is not non-decreasing");
  }
}

namespace {

/// slack(p) = sum_i h_i(p_i) - prod_i mul_i(p_i) - constant, where
/// h_i = lhs_i - add_i and rhs(p) = sum_i add_i(p_i) + prod_i mul_i(p_i) + constant.
/// Every mul_i is non-negative.
struct SlackForm {
  std::vector<std::vector<i128>> lhs;
  std::vector<std::vector<i128>> add;
  std::vector<std::vector<i128>> mul;
  std::vector<i128> min_h;
  i128 constant = 0;

  int parts() const { return static_cast<int>(lhs.size()); }
  int top(int part) const { return static_cast<int>(lhs[static_cast<std::size_t>(part)].size()) - 1; }
  i128 h(int part, int q) const {
    const auto i = static_cast<std::size_t>(part);
    const auto j = static_cast<std::size_t>(q);
    return lhs[i][j] - add[i][j];
  }

  void finish() {
    min_h.clear();
    for (int i = 0; i < parts(); ++i) {
      i128 best = h(i, 0);
      for (int q = 1; q <= top(i); ++q) best = std::min(best, h(i, q));
      min_h.push_back(best);
    }
  }

  Violation evaluate(const std::vector<int>& p) const {
    Violation v{p, 0, constant};
    i128 prod = 1;
    for (int i = 0; i < parts(); ++i) {
      const auto a = static_cast<std::size_t>(i);
      const auto q = static_cast<std::size_t>(p[a]);
      v.lhs += lhs[a][q];
      v.rhs += add[a][q];
      prod *= mul[a][q];
    }
    v.rhs += prod;
    return v;
  }
};

std::vector<i128> prefix_sums(const ScoreList& list) {
  std::vector<i128> out(list.size() + 1, 0);
  for (std::size_t j = 0; j < list.size(); ++j) out[j + 1] = out[j] + list[j];
  return out;
}

SlackForm losing_form(const Shape& shape, const ScoreLists& lists) {
  SlackForm f;
  for (int i = 0; i < shape.parts(); ++i) {
    const int n = shape.size(i);
    f.lhs.push_back(prefix_sums(lists.lists[static_cast<std::size_t>(i)]));
    f.add.emplace_back(static_cast<std::size_t>(n + 1), 0);
    std::vector<i128> mul;
    for (int q = 0; q <= n; ++q) mul.push_back(binom(q, shape.arity(i)).to_i128());
    f.mul.push_back(std::move(mul));
  }
  f.finish();
  return f;
}

SlackForm score_form(const Shape& shape, const ScoreLists& lists) {
  SlackForm f;
  f.constant = -shape.total_arcs().to_i128();
  for (int i = 0; i < shape.parts(); ++i) {
    const int n = shape.size(i);
    const i128 through = shape.arcs_through(i).to_i128();
    f.lhs.push_back(prefix_sums(lists.lists[static_cast<std::size_t>(i)]));
    std::vector<i128> add;
    std::vector<i128> mul;
    for (int q = 0; q <= n; ++q) {
      add.push_back(through * q);
      mul.push_back(binom(n - q, shape.arity(i)).to_i128());
    }
    f.add.push_back(std::move(add));
    f.mul.push_back(std::move(mul));
  }
  f.finish();
  return f;
}

/// Depth-first sweep in lexicographic order below a fixed prefix p[0..depth).
/// With pruning, a subtree is skipped once the product term is zero and the
/// best case of the remaining additive terms keeps the slack non-negative.
class Sweep {
 public:
  Sweep(const SlackForm& form, bool prune) : form_(form), prune_(prune) {
    suffix_min_.assign(static_cast<std::size_t>(form.parts()) + 1, 0);
    for (int i = form.parts() - 1; i >= 0; --i)
      suffix_min_[static_cast<std::size_t>(i)] = suffix_min_[static_cast<std::size_t>(i) + 1] + form.min_h[static_cast<std::size_t>(i)];
  }

  std::optional<Violation> first_with_head(int head) {
    p_.assign(static_cast<std::size_t>(form_.parts()), 0);
    p_[0] = head;
    return descend(1, form_.h(0, head), form_.mul[0][static_cast<std::size_t>(head)]);
  }

 private:
  std::optional<Violation> descend(int depth, i128 h_sum, i128 prod) {
    if (prune_ && prod == 0 && h_sum + suffix_min_[static_cast<std::size_t>(depth)] - form_.constant >= 0)
      return std::nullopt;
    if (depth == form_.parts()) {
      if (h_sum - prod - form_.constant < 0) return form_.evaluate(p_);
      return std::nullopt;
    }
    const auto d = static_cast<std::size_t>(depth);
    for (int q = 0; q <= form_.top(depth); ++q) {
      p_[d] = q;
      if (auto v = descend(depth + 1, h_sum + form_.h(depth, q), prod * form_.mul[d][static_cast<std::size_t>(q)]))
        return v;
    }
    return std::nullopt;
  }

  const SlackForm& form_;
  bool prune_;
  std::vector<i128> suffix_min_;
  std::vector<int> p_;
};

std::optional<Violation> first_violation(const SlackForm& form, CheckOptions options) {
  const int heads = form.top(0) + 1;
  const int workers = std::min(resolve_jobs(options.jobs), heads);
  if (workers <= 1) {
    Sweep sweep(form, options.prune);
    for (int head = 0; head < heads; ++head)
      if (auto v = sweep.first_with_head(head)) return v;
    return std::nullopt;
  }
  std::vector<std::optional<Violation>> found(static_cast<std::size_t>(heads));
  std::atomic<int> best{std::numeric_limits<int>::max()};
#pragma omp parallel num_threads(workers)
  {
    Sweep sweep(form, options.prune);
#pragma omp for schedule(dynamic, 1)
    for (int head = 0; head < heads; ++head) {
      if (head > best.load(std::memory_order_relaxed)) continue;
      found[static_cast<std::size_t>(head)] = sweep.first_with_head(head);
      if (found[static_cast<std::size_t>(head)]) {
        int cur = best.load(std::memory_order_relaxed);
        while (head < cur && !best.compare_exchange_weak(cur, head, std::memory_order_relaxed)) {
        }
      }
    }
  }
  for (auto& v : found)
    if (v) return v;
  return std::nullopt;
}

CheckResult finish(const SlackForm& form, const std::vector<int>& full, std::optional<Violation> violation) {
  CheckResult result;
  const Violation at_full = form.evaluate(full);
  result.full_lhs = at_full.lhs;
  result.full_rhs = at_full.rhs;
  result.equality_at_full = at_full.lhs == at_full.rhs;
  if (!violation && !result.equality_at_full) violation = at_full;
  result.violation = std::move(violation);
  result.valid = !result.violation && result.equality_at_full;
  return result;
}

CheckResult run_check(const SlackForm& form, const Shape& shape, CheckOptions options) {
  return finish(form, shape.sizes(), first_violation(form, options));
}

/// Lexicographic odometer over [0, n_1] x ... x [0, n_k]; returns false after the last tuple.
bool next_tuple(std::vector<int>& p, const std::vector<int>& top) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    auto a = static_cast<std::size_t>(i);
    if (p[a] < top[a]) {
      ++p[a];
      return true;
    }
    p[a] = 0;
  }
  return false;
}

template <class Rhs>
CheckResult reference_sweep(const Shape& shape, const ScoreLists& lists, Rhs&& rhs_of) {
  CheckResult result;
  std::vector<int> p(static_cast<std::size_t>(shape.parts()), 0);
  auto lhs_of = [&](const std::vector<int>& t) {
    i128 lhs = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
      for (int j = 0; j < t[i]; ++j) lhs += lists.lists[i][static_cast<std::size_t>(j)];
    return lhs;
  };
  do {
    const i128 lhs = lhs_of(p);
    const i128 rhs = rhs_of(p);
    if (lhs < rhs && !result.violation) result.violation = Violation{p, lhs, rhs};
  } while (next_tuple(p, shape.sizes()));
  result.full_lhs = lhs_of(shape.sizes());
  result.full_rhs = rhs_of(shape.sizes());
  result.equality_at_full = result.full_lhs == result.full_rhs;
  if (!result.violation && !result.equality_at_full)
    result.violation = Violation{shape.sizes(), result.full_lhs, result.full_rhs};
  result.valid = !result.violation && result.equality_at_full;
  return result;
}

}  // namespace

CheckResult check_losing_lists(const Shape& shape, const ScoreLists& lists, CheckOptions options) {
  require_well_formed(shape, lists, ListKind::losing);
  return run_check(losing_form(shape, lists), shape, options);
}

CheckResult check_score_lists(const Shape& shape, const ScoreLists& lists, CheckOptions options) {
  require_well_formed(shape, lists, ListKind::score);
  return run_check(score_form(shape, lists), shape, options);
}

CheckResult check_losing_lists_reference(const Shape& shape, const ScoreLists& lists) {
  require_well_formed(shape, lists, ListKind::losing);
  return reference_sweep(shape, lists, [&](const std::vector<int>& p) {
    Count prod(1);
    for (int i = 0; i < shape.parts(); ++i) prod *= binom(p[static_cast<std::size_t>(i)], shape.arity(i));
    return prod.to_i128();
  });
}

CheckResult check_score_lists_reference(const Shape& shape, const ScoreLists& lists) {
  require_well_formed(shape, lists, ListKind::score);
  return reference_sweep(shape, lists, [&](const std::vector<int>& p) {
    i128 touched = 0;
    Count untouched(1);
    for (int i = 0; i < shape.parts(); ++i) {
      const int q = p[static_cast<std::size_t>(i)];
      touched += shape.arcs_through(i).to_i128() * q;
      untouched *= binom(shape.size(i) - q, shape.arity(i));
    }
    return touched + untouched.to_i128() - shape.total_arcs().to_i128();
  });
}

CheckResult check_single_part(int n, int k_arity, std::span<const Score> list) {
  if (k_arity <= 1 || n < k_arity)
    throw InputError("check_single_part: need n >= arity > 1, got n=" + std::to_string(n) +
                     " arity=" + std::to_string(k_arity));
  if (static_cast<int>(list.size()) != n)
    throw InputError("check_single_part: list has " + std::to_string(list.size()) + " entries, expected " +
                     std::to_string(n));
  if (!list.empty() && list.front() < 0) throw InputError("check_single_part: negative entry");
  if (!std::is_sorted(list.begin(), list.end())) throw InputError("check_single_part: list is not non-decreasing");

  CheckResult result;
  i128 lhs = 0;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) lhs += list[static_cast<std::size_t>(j - 1)];
    const i128 rhs = binom(j, k_arity).to_i128();
    if (lhs < rhs && !result.violation) result.violation = Violation{{j}, lhs, rhs};
    if (j == n) {
      result.full_lhs = lhs;
      result.full_rhs = rhs;
    }
  }
  result.equality_at_full = result.full_lhs == result.full_rhs;
  if (!result.violation && !result.equality_at_full)
    result.violation = Violation{{n}, result.full_lhs, result.full_rhs};
  result.valid = !result.violation && result.equality_at_full;
  return result;
}

namespace {

ScoreLists reverse_complement(const Shape& shape, const ScoreLists& in, ListKind from, ListKind to) {
  require_well_formed(shape, in, from);
  ScoreLists out{to, {}};
  for (int i = 0; i < shape.parts(); ++i) {
    const Score bound = shape.arcs_through(i).to_i64();
    const auto& list = in.lists[static_cast<std::size_t>(i)];
    if (!list.empty() && list.back() > bound)
      throw InputError("list " + std::to_string(i + 1) + " has entry " + std::to_string(list.back()) +
                       " above the per-vertex arc count " + std::to_string(bound));
    ScoreList converted;
    converted.reserve(list.size());
    for (auto it = list.rbegin(); it != list.rend(); ++it) converted.push_back(bound - *it);
    out.lists.push_back(std::move(converted));
  }
  return out;
}

}  // namespace

ScoreLists losing_to_scores(const Shape& shape, const ScoreLists& losing) {
  return reverse_complement(shape, losing, ListKind::losing, ListKind::score);
}

ScoreLists scores_to_losing(const Shape& shape, const ScoreLists& scores) {
  return reverse_complement(shape, scores, ListKind::score, ListKind::losing);
}

}  // namespace hts
