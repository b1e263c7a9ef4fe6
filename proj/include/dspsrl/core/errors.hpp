#pragma once

#include <stdexcept>
#include <string>

namespace dspsrl {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad probability rows, bad dimensions, invalid configs.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation (e.g. theta < 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A planner did not converge or was handed an unsolvable problem.
class PlannerError : public Error {
 public:
  using Error::Error;
};

/// An observation has zero probability under every model in the belief.
class ImpossibleObservation : public Error {
 public:
  using Error::Error;
};

}  // namespace dspsrl
