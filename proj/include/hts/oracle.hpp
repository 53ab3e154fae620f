#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "hts/model.hpp"

namespace hts {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

struct EnumerationOptions {
  std::uint64_t budget = kDefaultEnumerationBudget;
  /// Workers splitting the assignment-rank range (<= 0: all cores).
  int jobs = 1;
};

/// (sum_i alpha_i)^(prod_i C(n_i, alpha_i)); throws BudgetExceeded above `budget`.
std::uint64_t assignment_count(const Shape& shape, std::uint64_t budget = kDefaultEnumerationBudget);

/// Every hypertournament up to loser choice, each once. Assignment rank a
/// picks, for selection rank r, the d_r-th vertex (ascending (part, index)) as
/// loser, where d_r is digit r of a in base sum_i alpha_i (selection 0 least
/// significant). Non-loser entries stay in canonical order.
class AssignmentStream {
 public:
  explicit AssignmentStream(const Shape& shape, std::uint64_t budget = kDefaultEnumerationBudget);

  std::uint64_t size() const { return count_; }
  /// Next hypertournament in assignment-rank order, or nullopt when exhausted.
  std::optional<Hypertournament> next();

 private:
  Shape shape_;
  std::vector<std::vector<VertexId>> members_;
  std::vector<int> digits_;
  std::uint64_t count_ = 0;
  std::uint64_t emitted_ = 0;
};

AssignmentStream enumerate_assignments(const Shape& shape, std::uint64_t budget = kDefaultEnumerationBudget);

using ListTuple = std::vector<ScoreList>;

/// Exact set of sorted list tuples attained over all loser assignments.
struct AchievableSet {
  Shape shape;
  ListKind kind = ListKind::losing;
  std::set<ListTuple> lists;
  Count assignment_count;
};

/// Walks the assignment space with an odometer that moves one loss per digit
/// change. The parallel version splits the rank range over workers and merges
/// their sets; the serial version is the reference.
AchievableSet achievable_losing_lists(const Shape& shape, EnumerationOptions options = {});
AchievableSet achievable_score_lists(const Shape& shape, EnumerationOptions options = {});
AchievableSet achievable_lists_serial(const Shape& shape, ListKind kind,
                                      std::uint64_t budget = kDefaultEnumerationBudget);

enum class RandomMode { loser_only, full_permutation };

/// Uniform integer in [0, bound) from raw mt19937_64 words by rejection of
/// the incomplete top block, then reduction modulo bound. Independent of the
/// standard library's distribution classes so fixtures are portable.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Deterministic for a fixed (shape, seed, mode). Walks selections in rank
/// order; loser_only draws one uniform loser per selection and keeps the
/// canonical prefix, full_permutation shuffles each arc by Fisher-Yates
/// (j = uniform_below(i + 1) for i from the last position down to 1).
Hypertournament random_hypertournament(const Shape& shape, std::uint64_t seed,
                                       RandomMode mode = RandomMode::loser_only);

struct SideReport {
  std::size_t accepted = 0;
  std::size_t achievable = 0;
  std::size_t candidates = 0;
  std::vector<ListTuple> only_accepted;
  std::vector<ListTuple> only_achievable;

  bool ok() const { return only_accepted.empty() && only_achievable.empty(); }
};

struct CrossValidationReport {
  Count assignments;
  SideReport losing;
  SideReport score;

  bool ok() const { return losing.ok() && score.ok(); }
};

/// Compares each checker with the achievable set over all non-decreasing
/// candidate tuples whose entries lie in [0, arcs_through(i)] and whose total
/// matches the arc identity (prod C for losses, (sum alpha - 1) prod C for scores).
CrossValidationReport cross_validate(const Shape& shape, EnumerationOptions options = {});

/// Candidate generator used by cross_validate: every tuple of non-decreasing
/// lists, list i of length n_i with entries in [0, bound[i]], summing to `total`.
std::vector<ListTuple> bounded_list_tuples(const Shape& shape, const std::vector<Score>& bound, Score total);

}  // namespace hts
