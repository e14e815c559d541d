#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pilotwave {

// Bad input: malformed configuration, violated precondition, unsupported
// combination of options. The CLI maps these to exit status 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical breakdown (NaN, instability, step underflow). CLI exit status 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SupportEscapesGrid : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class StabilityViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonFiniteField : public NumericalError {
 public:
  NonFiniteField(std::size_t step, const std::string& what)
      : NumericalError(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace pilotwave
