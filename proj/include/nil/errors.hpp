#pragma once

#include <stdexcept>
#include <string>

namespace nil {

/// Malformed or out-of-contract input (wrong dimension, negative exponent, c <= 0, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input is well formed but a mathematical precondition fails, e.g. the ideal
/// lies inside (z_p) so the weight restricts to -infinity on the hyperplane.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid numerical oracle configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace nil
