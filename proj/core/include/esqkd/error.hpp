#pragma once

#include <stdexcept>
#include <string>

namespace esqkd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller passed an argument that violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Numerical state drifted outside tolerance (e.g. a non-normalized register).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Register would exceed the statevector size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A protocol step was attempted out of order or with inconsistent data.
class ProtocolViolation : public Error {
 public:
  using Error::Error;
};

/// Cooperative inference was attempted without every required share.
class InsufficientShares : public Error {
 public:
  using Error::Error;
};

}  // namespace esqkd
