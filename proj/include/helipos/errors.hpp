#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace helipos {

/// Evaluation was requested at a point with |p| = 0.
class DegenerateMomentumError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation was requested inside the guard band around the 1 + kappa3 = 0 ray
/// (or another excluded denominator set).
class GuardedSingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The xi chart on S^2 is only valid for |xi| < pi (kappa3 > -1).
class ChartDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Coset decomposition requested too close to the cut locus |xi'| = pi.
class DecompositionSingularError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerically integrated trajectory left the guard domain.
class FlowSingularError : public std::runtime_error {
 public:
  FlowSingularError(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  /// Index of the integration step at which the trajectory exited.
  std::size_t exit_step() const { return step_; }

 private:
  std::size_t step_;
};

/// A finite rotation whose initial or final direction is in the excluded set.
class SingularRotationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation was called with arguments violating its stated precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace helipos
