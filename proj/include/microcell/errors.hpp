#pragma once

#include <stdexcept>
#include <string>

namespace microcell {

/// Input violates a type invariant or an operation precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operating current density at or beyond the limiting current density.
class OutOfRangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A load or design target that the modeled system cannot satisfy.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what, double limit = 0.0)
      : std::runtime_error(what), limit_(limit) {}

  /// Best achievable value of the quantity that was requested (for example
  /// the maximum deliverable power in W).
  double limit() const { return limit_; }

 private:
  double limit_;
};

}  // namespace microcell
