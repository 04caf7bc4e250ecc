#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rec/scenario.hpp"

namespace rec {

/// A positive-valued series on a strictly increasing hourly time grid.
/// Timestamps are hours since the Unix epoch.
struct HourlySeries {
  std::vector<std::int64_t> timestamps;
  std::vector<double> values;
  std::size_t size() const { return values.size(); }
};

/// Reads a `timestamp,value` CSV with a header row and ISO-8601 hourly
/// timestamps. Gaps of up to 3 consecutive missing hours are filled by
/// linear interpolation in log-space (with a warning); longer gaps and
/// non-increasing timestamps are errors.
HourlySeries load_hourly_csv(const std::string& path,
                             std::vector<std::string>* warnings = nullptr);

/// One fitted harmonic: amplitude * cos(2 pi frequency t + phase), with t in
/// hours from the start of the series, acting on the log-values.
struct SeasonalComponent {
  double frequency = 0.0;  // 1/h
  double amplitude = 0.0;
  double phase = 0.0;      // radians
};

struct DeseasonalizeResult {
  HourlySeries residual;   // seasonal part removed, level retained
  std::vector<SeasonalComponent> components;
  double log_intercept = 0.0;  // constant term of the harmonic fit
};

/// Least-squares harmonic regression of the log-values on a constant plus a
/// sine/cosine pair per frequency. The residual keeps the constant term, so
/// a seasonality-free series passes through unchanged.
DeseasonalizeResult deseasonalize(const HourlySeries& series,
                                  const std::vector<double>& frequencies);

struct CalibrationResult {
  double intercept = 0.0;   // deseasonalized level, exp(constant term)
  double mu_hat = 0.0;      // 1/h
  double mu_ci_low = 0.0;   // 95% confidence interval for mu_hat
  double mu_ci_high = 0.0;
  double sigma_hat = 0.0;   // 1/sqrt(h)
  bool degenerate = false;  // sigma below numerical resolution
  std::vector<SeasonalComponent> seasonal_components;
};

/// GBM drift/volatility from i.i.d. Normal hourly log-increments. Requires
/// at least 100 points on a uniform grid; the intercept is the first value.
CalibrationResult estimate_gbm(const HourlySeries& series);

/// Full pipeline: deseasonalize, then estimate the GBM on the residual.
/// The intercept is the exponential of the harmonic constant term.
CalibrationResult calibrate(const HourlySeries& series,
                            const std::vector<double>& frequencies);

/// Scenario fragment from a calibration: initial value from the intercept
/// and, when `martingale` is set, drift replaced by -sigma^2/2.
GbmSpec to_gbm_spec(const CalibrationResult& result, bool martingale = true);

}  // namespace rec
