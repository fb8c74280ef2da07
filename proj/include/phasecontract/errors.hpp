#pragma once

#include <stdexcept>
#include <string>

namespace phasecontract {

/// Illegal quantum numbers, out-of-range indices, malformed matrices.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition of an operation (truncation, n <= s/10, grid
/// bandlimit, ...) does not hold for the requested arguments.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative numerical method failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phasecontract
