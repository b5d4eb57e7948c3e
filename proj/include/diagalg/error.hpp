#pragma once

#include <stdexcept>
#include <string>

namespace diagalg {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands come from different rings or different algebra contexts.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

// Input text (ring, family, diagram, scalar, JSON) could not be parsed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
  explicit ParseError(const std::string& what) : Error(what), position_(0) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A computation would exceed the configured size limit.
class ResourceGuard : public Error {
 public:
  using Error::Error;
};

// Homology requested over a ring that is neither the integers nor a field.
class UnsupportedRing : public Error {
 public:
  using Error::Error;
};

// A precondition on arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed (d^2 != 0, product left the basis, ...).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace diagalg
