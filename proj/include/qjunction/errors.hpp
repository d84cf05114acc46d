#pragma once

#include <stdexcept>
#include <string>

namespace qjunction {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: non-unitary matrices, bad reservoir parameters, malformed configs.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Input outside the domain of a formula (k = 0 for a step function, μ_j = 0 in a conductance).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Density observable requested for a coupling with bound states and no override.
class BoundStateError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Integrand produced a non-finite value.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A sum rule or identity that must hold by construction was violated.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace qjunction
