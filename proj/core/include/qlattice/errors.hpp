#pragma once

#include <stdexcept>
#include <string>

namespace qlattice {

/// Malformed arguments: non-finite entries, unnormalized states, bad parameters.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands live in spaces of different dimension.
class DimensionMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Phase-space constructions need an odd dimension.
class UnsupportedDimension : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A seed projector whose displaced copies are not pairwise distinct.
class RejectedSeed : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Inputs are well formed but violate a mathematical precondition of the operation.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Rank of a zero-probability branch was requested.
class UndefinedRank : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace qlattice
