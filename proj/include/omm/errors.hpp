#pragma once

#include <stdexcept>
#include <string>

namespace omm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: parameters outside their domain, malformed configs or files.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Numerical pathology: poles, singular systems, eigensolver failures.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A denominator of the response algebra (or the sideband matrix) vanished.
class PoleError : public NumericalError {
 public:
  PoleError(std::string block, double delta, const std::string& detail)
      : NumericalError("pole in " + block + " at delta=" + std::to_string(delta) +
                       (detail.empty() ? "" : ": " + detail)),
        block_(std::move(block)),
        delta_(delta) {}

  const std::string& block() const noexcept { return block_; }
  double delta() const noexcept { return delta_; }

 private:
  std::string block_;
  double delta_;
};

/// The steady-state scan found no sign change of the fixed-point defect.
class BracketExhausted : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace omm
