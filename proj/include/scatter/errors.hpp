#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace scatter {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a point where the model itself is singular (Yukawa at r=0).
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Closed-form expression evaluated exactly at its pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for the given potential variant.
class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

/// Potential has not decayed where the caller assumed it had.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Integrand does not decay fast enough for a semi-infinite integral.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Configuration text could not be parsed or failed validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical procedure stopped before reaching its target.
/// Carries the best available estimate so callers may degrade gracefully.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> best_estimate,
                   double error_bound,
                   std::vector<std::complex<double>> partial_sums = {})
      : Error(what),
        best_estimate_(best_estimate),
        error_bound_(error_bound),
        partial_sums_(std::move(partial_sums)) {}

  std::complex<double> best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }
  const std::vector<std::complex<double>>& partial_sums() const noexcept {
    return partial_sums_;
  }

 private:
  std::complex<double> best_estimate_;
  double error_bound_;
  std::vector<std::complex<double>> partial_sums_;
};

}  // namespace scatter
