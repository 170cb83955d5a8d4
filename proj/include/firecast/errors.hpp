#pragma once

#include <stdexcept>
#include <string>

namespace firecast {

// Base class for every error the library raises. The CLI maps subclasses
// onto exit codes (3 for input/validation, 4 for numeric failures).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tensor or layer shape disagreement; message names the offending axes.
struct DimensionError : Error {
  using Error::Error;
};

// Scalar argument outside its mathematical domain.
struct DomainError : Error {
  using Error::Error;
};

// Bad user input that is not a parse failure: empty dataset, empty
// coordinate set, inverted time window.
struct InputError : Error {
  using Error::Error;
};

// File contents that do not match their grammar; carries a byte offset
// where one is known.
struct ParseError : Error {
  using Error::Error;
};

// Semantic rule violation: weight out of range, diagonal rule, schema
// inconsistency, version mismatch.
struct ValidationError : Error {
  using Error::Error;
};

// Non-finite values where finite arithmetic is required, including
// training divergence.
struct NumericError : Error {
  using Error::Error;
};

// Filesystem failure.
struct IoError : Error {
  using Error::Error;
};

}  // namespace firecast
