#pragma once

#include <stdexcept>
#include <string>

namespace qmetric {

/// Shapes or indices that do not line up (block counts, matrix sizes, point indices).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inputs that are well-formed but violate an operation's mathematical precondition.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Internal invariant that the construction guarantees; raised only on a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qmetric
