#pragma once

#include <stdexcept>
#include <string>

namespace leaf {

// Raised when an argument lies outside the mathematical domain of an inverse
// function (e.g. arcsleaf of |r| > 1, acleafh of r < 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical kernel exhausted its iteration or refinement budget.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Base for refusals caused by an argument that violates a precondition of a
// forward evaluation or formula. Samplers treat these as "not in domain".
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// |l| is at or beyond the domain limit of a hyperbolic leaf function.
class DomainExceeded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// The argument is within pole_guard of a pole, or a formula denominator
// (or radicand) is within pole_guard of zero.
class PoleProximity : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A formula would divide by a value of magnitude below pole_guard.
class DivisionNearZero : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// The square root in a finite-difference check is not differentiable here.
class DegenerateBranch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace leaf
