#pragma once

#include <stdexcept>
#include <string>

namespace cdr {

/// Base class for every error raised by the workbench.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (schema violations, bad group tables, bad twists).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A precondition of an operation was violated by the caller.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A result does not fit inside the declared truncation.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// A symmetric power was requested on a factor without positive q-degree.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Fixed-point data whose localization sum does not reduce as required.
class LocalizationError : public Error {
 public:
  using Error::Error;
};

/// A verified identity failed; carries the first offending location.
class InvariantFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace cdr
