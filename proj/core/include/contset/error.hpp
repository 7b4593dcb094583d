#pragma once

#include <stdexcept>

namespace contset {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (automaton, transducer, lasso or PCP files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on inputs violating its precondition. The
/// message names the violated condition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace contset
