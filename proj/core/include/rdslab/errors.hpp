#pragma once

#include <stdexcept>
#include <string>

namespace rdslab {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (files, samples, configs).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Arguments that violate an operation's preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An estimator or metric could not be computed from the data given.
class EstimationError : public Error {
 public:
  using Error::Error;
};

/// A tuning or calibration search stopped without reaching its target.
class TuningError : public Error {
 public:
  TuningError(const std::string& what, double best_achieved)
      : Error(what), best_achieved_(best_achieved) {}

  double best_achieved() const noexcept { return best_achieved_; }

 private:
  double best_achieved_;
};

class CalibrationError : public Error {
 public:
  CalibrationError(const std::string& what, double degree_at_low, double degree_at_high)
      : Error(what), degree_at_low_(degree_at_low), degree_at_high_(degree_at_high) {}

  double degree_at_low() const noexcept { return degree_at_low_; }
  double degree_at_high() const noexcept { return degree_at_high_; }

 private:
  double degree_at_low_;
  double degree_at_high_;
};

}  // namespace rdslab
