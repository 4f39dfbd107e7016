#pragma once

#include <stdexcept>
#include <string>

namespace henon4 {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failures (exit code 3 at the CLI level).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public NumericalError {
 public:
  NonConvergence(const std::string& what, double best_estimate, double error_estimate)
      : NumericalError(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

class NonFinite : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class Divergent : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class OptFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Input validation failures (exit code 2 at the CLI level).
class InputError : public Error {
 public:
  using Error::Error;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class ThresholdError : public InputError {
 public:
  using InputError::InputError;
};

class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace henon4
