#pragma once

#include <stdexcept>
#include <string>

namespace hierperc {

/// Invalid argument or violated precondition. The CLI maps it to exit code 2.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A requested enumeration or sample does not fit the configured capacity
/// (or the native label width). The CLI maps it to exit code 3.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A series that the caller asked to sum to infinity does not converge.
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A bisection bracket does not contain a sign change.
class BracketError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

}  // namespace hierperc
