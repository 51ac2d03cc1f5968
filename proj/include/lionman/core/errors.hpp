#pragma once

#include <stdexcept>
#include <string>

namespace lionman {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad fork time, space
/// without a minimum, disconnected endpoints, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A value fell outside the domain of a map (radial retraction at 0, unknown
/// point identifier, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Runtime contract violation during a match: non-monotone time, a position
/// outside the space, an invalid mode combination.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A strategy's output depended on opponent samples it was not allowed to see.
class CausalityViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed input document (space file, path file, scenario).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace lionman
