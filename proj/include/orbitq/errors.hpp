#pragma once

#include <stdexcept>
#include <string>

namespace orbitq {

/// An iterative routine did not converge, or produced a non-finite value.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A positive semidefinite matrix has more nonzero eigenvalues than requested columns.
class RankTooHigh : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or parameters violate an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace orbitq
