#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dgk {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built over different coefficient fields.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed polynomial, Koszul element or lift text. Carries the 0-based
/// character offset where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        message_(what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }
  /// The message without the position suffix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

/// Input is well formed but violates a mathematical precondition
/// (non-homogeneous ideal, lift condition, non-cycle, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Rings outside the supported classes (non-Artinian quotients, semigroups
/// without finite conductor, ...).
class UnsupportedRing : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A computation would need data beyond the degree window it was given.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// The requested computation exceeds the configured size budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace dgk
