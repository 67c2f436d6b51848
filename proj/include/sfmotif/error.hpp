#pragma once

#include <stdexcept>
#include <string>

namespace sfmotif {

/// Malformed input text (motif specs, plan files, edge lists, CLI values).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A motif spec that parses but describes a disconnected graph.
class DisconnectedError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// An operation was called outside its documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation refused to run because its projected cost exceeds a
/// configured ceiling (hub explosion in the enumerator, oversized grids).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sfmotif
