#pragma once

#include <stdexcept>
#include <string>

namespace hcat {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search or enumeration exceeded its configured budget or a size bound.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An argument is out of range or structurally malformed.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// An input does not satisfy the precondition of the requested operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A value failed validation (simplicial identities, category axioms, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An internal cross-check disagreed; signals a bug or an invalid certificate.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A document could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace hcat
