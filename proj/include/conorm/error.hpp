#pragma once

#include <stdexcept>
#include <string>

namespace conorm {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RankMismatch : public Error {
 public:
  using Error::Error;
};

/// A linear system that was required to be nonsingular was not.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// Enumeration of a Weyl group exceeded its configured size cap.
class WeylCapExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; indicates a bug or an input that
/// is outside the supported regime.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace conorm
