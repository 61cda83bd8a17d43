#pragma once

#include <stdexcept>
#include <string>

namespace cubint {

/// Input outside the mathematical domain of a function (e.g. K(m) for m >= 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent arguments.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An observable could not be evaluated at the requested state.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model specification violates its family's parameter constraints.
class BuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The implicit solve of a time step did not converge.
class StepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A step would leave (or come too close to the edge of) the model domain.
class BoundaryError : public std::runtime_error {
 public:
  BoundaryError(const std::string& what, double distance)
      : std::runtime_error(what), distance_(distance) {}
  /// Signed distance of the offending midpoint from the admissible region.
  double distance() const noexcept { return distance_; }

 private:
  double distance_;
};

}  // namespace cubint
