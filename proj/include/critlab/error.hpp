#pragma once

#include <stdexcept>
#include <string>

namespace critlab {

/// Parameters (or a graph request) that cannot correspond to any graph.
/// The CLI maps this family of outcomes to exit status 2.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The constraint system for a parameter set has no nonnegative solution.
class ContradictionError : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

/// Requested object is mathematically admissible but not known to exist.
class ExistenceUnknownError : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

/// Malformed edge-list or matrix text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive enumeration would exceed its configured size guard.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace critlab
