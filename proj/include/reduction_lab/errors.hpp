#pragma once

#include <stdexcept>
#include <string>

namespace rlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong dimensions, out-of-range parameters, non-Hermitian
/// operands where Hermitian ones are required.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A computed quantity left its admissible band by more than the tolerance,
/// e.g. a probability of 1.3. Signals a broken model rather than roundoff.
class NumericalConsistencyError : public Error {
 public:
  using Error::Error;
};

class NotCompletelyPositive : public Error {
 public:
  explicit NotCompletelyPositive(double min_eigenvalue);
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// Raised when a reduced state is requested for an outcome whose probability
/// is at or below the probability floor.
class ZeroProbabilityOutcome : public Error {
 public:
  ZeroProbabilityOutcome(double outcome, double probability);
  double outcome() const noexcept { return outcome_; }
  double probability() const noexcept { return probability_; }

 private:
  double outcome_;
  double probability_;
};

/// The apparatus (or operation) does not measure the stated observable.
/// `detail` names the worst-violating check; `residual` is its size.
class NotAMeasurement : public Error {
 public:
  NotAMeasurement(std::string detail, double residual);
  const std::string& detail() const noexcept { return detail_; }
  double residual() const noexcept { return residual_; }

 private:
  std::string detail_;
  double residual_;
};

class MissingProbe : public Error {
 public:
  MissingProbe() : Error("measurement model has no probe observable") {}
};

class UnsupportedDegenerate : public Error {
 public:
  using Error::Error;
};

}  // namespace rlab
