#pragma once

#include <stdexcept>
#include <string>

namespace satconc {

/// Malformed arguments: arity mismatches, out-of-range parameters, bad files.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A counting engine was asked to handle a formula outside its class.
class InvalidEngine : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A size cap or search budget was exceeded. Never accompanied by a partial answer.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace satconc
