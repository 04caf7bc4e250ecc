#pragma once

#include <stdexcept>
#include <string>

namespace rec {

/// Base class for all model errors.
class ModelError : public std::runtime_error {
public:
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A scenario field violates a structural invariant (bounds, signs, caps).
class ValidationError : public ModelError {
public:
  ValidationError(std::string field, const std::string& msg)
      : ModelError(field + ": " + msg), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

/// One or more net discount rates are non-positive: the integrability
/// condition fails and all downstream closed forms are invalid.
class AssumptionViolation : public ModelError {
public:
  explicit AssumptionViolation(const std::string& rates)
      : ModelError("non-positive net discount rate(s): " + rates) {}
};

/// r_d <= 0: the incentive value function is not defined.
class RateViolation : public ModelError {
public:
  using ModelError::ModelError;
};

/// Marginal incentive value requested at zero aggregate capacity.
class DegenerateAggregate : public ModelError {
public:
  using ModelError::ModelError;
};

/// g_h + g_b = 0: the continuum threshold beta_n is not defined.
class UndefinedBetaN : public ModelError {
public:
  using ModelError::ModelError;
};

/// Monte Carlo horizon too short for the requested accuracy.
class TruncationTooShort : public ModelError {
public:
  using ModelError::ModelError;
};

/// Calibration input errors.
class CalibrationError : public ModelError {
public:
  using ModelError::ModelError;
};

/// Harmonic regression design matrix is rank deficient (duplicate or
/// aliased frequencies).
class SingularDesign : public CalibrationError {
public:
  using CalibrationError::CalibrationError;
};

/// A calibration series value is not strictly positive.
class NonPositiveValue : public CalibrationError {
public:
  using CalibrationError::CalibrationError;
};

/// Too few observations for estimation.
class InsufficientData : public CalibrationError {
public:
  using CalibrationError::CalibrationError;
};

}  // namespace rec
