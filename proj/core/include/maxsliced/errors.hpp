#pragma once

#include <stdexcept>
#include <string>

namespace maxsliced {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on sizes, dimensions or values was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A direction could not be formed because the vector to normalize vanished.
class DegenerateDirection : public Error {
 public:
  using Error::Error;
};

}  // namespace maxsliced
