#pragma once

#include <stdexcept>
#include <string>

namespace ladder {

/// Bad argument or precondition violation (maps to CLI exit code 1).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Problem size exceeds the configured desk-scale cap (CLI exit code 1).
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A numerical routine failed to converge (CLI exit code 2).
struct NumericalFailure : std::runtime_error {
  double tail_estimate;
  explicit NumericalFailure(const std::string& what, double tail = 0.0)
      : std::runtime_error(what), tail_estimate(tail) {}
};

}  // namespace ladder
