#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coarse {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point encoding that does not denote any point of the space.
class UnknownPoint : public Error {
 public:
  using Error::Error;
};

/// A query that would need points beyond a generated space's window.
/// Never interpret as "no such points".
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An enumeration that would materialize more objects than the caller allowed.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t reached)
      : Error(what), reached_(reached) {}
  std::size_t reached() const { return reached_; }

 private:
  std::size_t reached_;
};

/// Malformed parameters: nonpositive weights, loop edges, unknown catalog tags...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operation inputs that violate a documented precondition.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace coarse
