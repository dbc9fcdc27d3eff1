#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace groom {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed topology/catalog/dump input. `line()` is 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A reservation hit a resource that is already taken.
class ResourceConflict : public Error {
 public:
  using Error::Error;
};

/// Release of something that was never reserved, or a pool driven negative.
class BookkeepingError : public Error {
 public:
  using Error::Error;
};

class InvalidIntent : public Error {
 public:
  using Error::Error;
};

class UnknownIntent : public Error {
 public:
  using Error::Error;
};

class GroomingCapacityError : public Error {
 public:
  using Error::Error;
};

class CycleError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a precondition of an operation.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Internal state disagrees with itself. Always a bug, never a blocked demand.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace groom
