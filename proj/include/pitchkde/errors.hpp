#pragma once

#include <stdexcept>
#include <string>

namespace pitchkde {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (non-finite input, bad range,
// mismatched shapes, ...).
struct InvalidArgumentError : Error {
  using Error::Error;
};

// An operation that requires at least one element received none.
struct EmptyInputError : Error {
  using Error::Error;
};

// Not enough data for the requested computation (e.g. fewer samples than
// cross-validation folds).
struct InsufficientDataError : Error {
  using Error::Error;
};

// Input is structurally valid but carries no usable signal (all-zero grid,
// empty support).
struct DegenerateInputError : Error {
  using Error::Error;
};

// A mass floor pruned every support cell; the floor must be lowered.
struct FloorTooAggressiveError : Error {
  using Error::Error;
};

// Input file does not match the expected schema (missing columns, ...).
struct SchemaError : Error {
  using Error::Error;
};

// A configuration file or object is inconsistent.
struct ConfigError : Error {
  using Error::Error;
};

// Filesystem / IO failure.
struct IoError : Error {
  using Error::Error;
};

}  // namespace pitchkde
