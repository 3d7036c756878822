#pragma once

#include <stdexcept>
#include <string>

namespace affhur {

// Base of all library errors. The C API maps each subclass onto a status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed literal, unknown group type, dimension mismatch in user input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Precondition violated by a caller (non-root, wrong tuple length, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A search hit its node/depth/level cap before reaching a conclusion.
class LimitError : public Error {
 public:
  using Error::Error;
};

// An internal cross-check failed. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace affhur
