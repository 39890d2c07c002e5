#pragma once

#include <stdexcept>
#include <string>

namespace gjac {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (curve files, point literals, CLI arguments).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An input violates a mathematical precondition (singular model, point off
/// the curve, repeated glue point, zero torus coordinate, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A size guard on an exhaustive computation was exceeded.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace gjac
