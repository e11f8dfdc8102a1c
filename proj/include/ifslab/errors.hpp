#pragma once

#include <stdexcept>
#include <string>

namespace ifslab {

// Error taxonomy. Everything derives from Error so callers can catch the
// library as a whole, or a specific condition.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point or cell fell outside the space a map/grid operation requires.
struct DomainError : Error {
  using Error::Error;
};

// eval_inverse on a non-invertible map (singular affine part).
struct NotInvertibleError : Error {
  using Error::Error;
};

// A bisection/solver failed to reach its tolerance.
struct ConvergenceError : Error {
  using Error::Error;
};

// A finite symbol stream ran out of symbols.
struct StreamExhaustedError : Error {
  using Error::Error;
};

// Grid construction would exceed the cell budget.
struct ResolutionError : Error {
  using Error::Error;
};

// Two grids with different space or resolution were combined.
struct ComparabilityError : Error {
  using Error::Error;
};

struct EmptySetError : Error {
  using Error::Error;
};

struct InvalidPolicyError : Error {
  using Error::Error;
};

struct InsufficientSamplesError : Error {
  using Error::Error;
};

// Cantor endpoint sets that cannot be matched by a PL homeomorphism.
struct IncompatibleStructureError : Error {
  using Error::Error;
};

struct UnknownPresetError : Error {
  using Error::Error;
};

// Nested-preimage grid emptied out; the supplied set was not backward
// invariant (or the resolution is too coarse to tell).
struct EmptyWitnessError : Error {
  using Error::Error;
};

struct IndexError : Error {
  using Error::Error;
};

// CLI/config-file problems. Mapped to exit code 2 by the tool.
struct ConfigError : Error {
  using Error::Error;
};

// Exceeded an explicit work budget where that is fatal rather than a
// reportable verdict. Mapped to exit code 3 by the tool.
struct BudgetError : Error {
  using Error::Error;
};

}  // namespace ifslab
