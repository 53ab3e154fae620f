#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hts/errors.hpp"
#include "hts/model.hpp"

namespace hts {

/// A prefix tuple (p_1, ..., p_k) at which the inequality fails, with both sides.
struct Violation {
  std::vector<int> prefix;
  i128 lhs = 0;
  i128 rhs = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct CheckResult {
  bool valid = false;
  /// Lexicographically smallest failing tuple. Falls back to the full tuple
  /// when only the equality at p = n fails.
  std::optional<Violation> violation;
  bool equality_at_full = false;
  i128 full_lhs = 0;
  i128 full_rhs = 0;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

struct CheckOptions {
  /// Skip subtrees of the tuple space whose slack is provably non-negative.
  bool prune = false;
  /// Workers for the sweep, split by the first coordinate (<= 0: all cores).
  int jobs = 1;
};

/// Raised by operations whose precondition is a list accepted by a checker.
class InvalidLists : public Error {
 public:
  InvalidLists(const std::string& what, CheckResult result) : Error(what), result_(std::move(result)) {}
  const CheckResult& result() const noexcept { return result_; }

 private:
  CheckResult result_;
};

/// Losing score lists: for every 0 <= p_i <= n_i,
///   sum_i sum_{j < p_i} r_ij >= prod_i C(p_i, alpha_i),
/// with equality at p = n. Throws InputError for a score-kind argument,
/// length mismatch, negative entries or a non-monotone list.
CheckResult check_losing_lists(const Shape& shape, const ScoreLists& lists, CheckOptions options = {});

/// Score lists: for every 0 <= p_i <= n_i,
///   sum prefix scores >= sum_i p_i * arcs_through(i) + prod_i C(n_i - p_i, alpha_i) - prod_i C(n_i, alpha_i),
/// with equality at p = n.
CheckResult check_score_lists(const Shape& shape, const ScoreLists& lists, CheckOptions options = {});

/// Plain odometer over the whole tuple space, evaluating both sides straight
/// from binomials. Kept as the reference for the optimized sweeps.
CheckResult check_losing_lists_reference(const Shape& shape, const ScoreLists& lists);
CheckResult check_score_lists_reference(const Shape& shape, const ScoreLists& lists);

/// Single vertex set, arity k_arity: sum_{i <= j} r_i >= C(j, k_arity) for all
/// j, equality at j = n. Requires n >= k_arity > 1.
CheckResult check_single_part(int n, int k_arity, std::span<const Score> list);

/// s_ij = arcs_through(i) - r_i(n_i + 1 - j): reverse each list, then
/// complement. Throws InputError for entries outside [0, arcs_through(i)] or
/// non-monotone input.
ScoreLists losing_to_scores(const Shape& shape, const ScoreLists& losing);
ScoreLists scores_to_losing(const Shape& shape, const ScoreLists& scores);

/// Throws InputError unless `lists` has `kind`, one list per part of the
/// right length, non-negative and non-decreasing entries.
void require_well_formed(const Shape& shape, const ScoreLists& lists, ListKind kind);

}  // namespace hts
