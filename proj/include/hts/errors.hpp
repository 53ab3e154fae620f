#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hts {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed caller input: wrong lengths, unsorted lists, negative entries,
/// bad shape parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A count exceeded the configured magnitude guard or a fixed-width limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would visit more objects than its budget allows.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::string required)
      : Error(what), required_(std::move(required)) {}
  /// Decimal rendering of the number of objects the request needs.
  const std::string& required() const noexcept { return required_; }

 private:
  std::string required_;
};

/// A hypertournament failed structural validation.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// No arc contains both vertices with the requested loser.
class NoEligibleArc : public Error {
 public:
  using Error::Error;
};

/// Saturation found no decrement that keeps the prefix inequalities intact.
class NoValidStep : public Error {
 public:
  using Error::Error;
};

/// The inductive realizer could not undo a saturation step.
class RealizationGap : public Error {
 public:
  using Error::Error;
};

/// The flow realizer could not route every loss.
class Infeasible : public Error {
 public:
  using Error::Error;
};

}  // namespace hts
