#pragma once

#include <stdexcept>
#include <string>

namespace monospec {

// Invalid argument values or malformed configuration.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerically degenerate or unreadable input data.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// An asymptotic-regime hypothesis (typically f'(t0) < 0) does not hold.
class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// A hard internal assertion failed; results cannot be trusted.
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace monospec
