#pragma once

#include <stdexcept>
#include <string>

namespace toral {

/// A caller violated an operation's precondition (bad dimension, zero
/// direction, collinear triple, ...). The message is stable and short so it
/// can be surfaced verbatim in CLI error JSON.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation could not be completed (overflow guard, failed convergence).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace toral
