#include "rec/calibration.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace rec {

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

// Parses "YYYY-MM-DD[T ]HH:MM[:SS]" into hours since the epoch. Minutes and
// seconds must be zero at hourly resolution.
std::int64_t parse_hour(const std::string& ts, std::size_t line) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, se = 0;
  const int got = std::sscanf(ts.c_str(), "%d-%d-%d%*1[T ]%d:%d:%d",
                              &y, &mo, &d, &h, &mi, &se);
  if (got < 5 || mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23)
    throw CalibrationError("line " + std::to_string(line) +
                           ": unparsable ISO-8601 timestamp '" + ts + "'");
  if (mi != 0 || se != 0)
    throw CalibrationError("line " + std::to_string(line) +
                           ": timestamp not at hourly resolution: '" + ts + "'");
  return days_from_civil(y, mo, d) * 24 + h;
}

}  // namespace

HourlySeries load_hourly_csv(const std::string& path,
                             std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw CalibrationError("cannot open file: " + path);

  std::string line;
  if (!std::getline(in, line))
    throw CalibrationError(path + ": empty file, expected a header row");
  if (line.find("timestamp") == std::string::npos)
    throw CalibrationError(path + ": missing 'timestamp,value' header row");

  HourlySeries raw;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw CalibrationError("line " + std::to_string(lineno) +
                             ": expected 'timestamp,value'");
    const std::int64_t t = parse_hour(line.substr(0, comma), lineno);
    double v = 0.0;
    try {
      v = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw CalibrationError("line " + std::to_string(lineno) +
                             ": unparsable value");
    }
    if (!(v > 0.0))
      throw NonPositiveValue("line " + std::to_string(lineno) +
                             ": values must be strictly positive");
    if (!raw.timestamps.empty() && t <= raw.timestamps.back())
      throw CalibrationError("line " + std::to_string(lineno) +
                             ": timestamps must be strictly increasing");
    raw.timestamps.push_back(t);
    raw.values.push_back(v);
  }
  if (raw.size() < 2)
    throw InsufficientData(path + ": need at least 2 observations");

  // Fill gaps of up to 3 missing hours by log-linear interpolation.
  HourlySeries out;
  out.timestamps.push_back(raw.timestamps.front());
  out.values.push_back(raw.values.front());
  for (std::size_t i = 1; i < raw.size(); ++i) {
    const std::int64_t gap = raw.timestamps[i] - raw.timestamps[i - 1];
    if (gap > 4)
      throw CalibrationError("gap of " + std::to_string(gap - 1) +
                             " missing hours before timestamp index " +
                             std::to_string(i) + " exceeds the 3-hour limit");
    if (gap > 1) {
      const double l0 = std::log(raw.values[i - 1]);
      const double l1 = std::log(raw.values[i]);
      for (std::int64_t k = 1; k < gap; ++k) {
        out.timestamps.push_back(raw.timestamps[i - 1] + k);
        out.values.push_back(std::exp(
            l0 + (l1 - l0) * static_cast<double>(k) / static_cast<double>(gap)));
      }
      if (warnings)
        warnings->push_back("interpolated " + std::to_string(gap - 1) +
                            " missing hour(s) before timestamp index " +
                            std::to_string(i));
    }
    out.timestamps.push_back(raw.timestamps[i]);
    out.values.push_back(raw.values[i]);
  }
  return out;
}

DeseasonalizeResult deseasonalize(const HourlySeries& series,
                                  const std::vector<double>& frequencies) {
  const auto n = static_cast<Eigen::Index>(series.size());
  if (n < 2) throw InsufficientData("deseasonalize: need at least 2 points");
  for (double f : frequencies)
    if (!(f > 0.0) || !(f < 0.5))
      throw CalibrationError("frequencies must lie in (0, 0.5) cycles/hour");

  const auto k = static_cast<Eigen::Index>(frequencies.size());
  Eigen::MatrixXd design(n, 1 + 2 * k);
  Eigen::VectorXd logv(n);
  const std::int64_t t0 = series.timestamps.front();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(series.timestamps[static_cast<std::size_t>(i)] - t0);
    design(i, 0) = 1.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double a = 2.0 * std::numbers::pi *
                       frequencies[static_cast<std::size_t>(j)] * t;
      design(i, 1 + 2 * j) = std::cos(a);
      design(i, 2 + 2 * j) = std::sin(a);
    }
    logv(i) = std::log(series.values[static_cast<std::size_t>(i)]);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < design.cols())
    throw SingularDesign(
        "harmonic design matrix is rank deficient (duplicate or aliased "
        "frequencies)");
  const Eigen::VectorXd coef = qr.solve(logv);

  DeseasonalizeResult res;
  res.log_intercept = coef(0);
  Eigen::VectorXd seasonal = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < k; ++j) {
    const double a = coef(1 + 2 * j);
    const double b = coef(2 + 2 * j);
    SeasonalComponent comp;
    comp.frequency = frequencies[static_cast<std::size_t>(j)];
    comp.amplitude = std::hypot(a, b);
    comp.phase = std::atan2(-b, a);
    res.components.push_back(comp);
    seasonal += design.col(1 + 2 * j) * a + design.col(2 + 2 * j) * b;
  }

  res.residual.timestamps = series.timestamps;
  res.residual.values.resize(series.size());
  for (Eigen::Index i = 0; i < n; ++i)
    res.residual.values[static_cast<std::size_t>(i)] =
        std::exp(logv(i) - seasonal(i));
  return res;
}

CalibrationResult estimate_gbm(const HourlySeries& series) {
  if (series.size() < 100)
    throw InsufficientData("estimate_gbm: need at least 100 observations");
  for (double v : series.values)
    if (!(v > 0.0))
      throw NonPositiveValue("estimate_gbm: values must be strictly positive");

  const std::size_t n = series.size() - 1;  // increments
  const double dt =
      static_cast<double>(series.timestamps[1] - series.timestamps[0]);
  for (std::size_t i = 1; i < series.size(); ++i)
    if (series.timestamps[i] - series.timestamps[i - 1] !=
        series.timestamps[1] - series.timestamps[0])
      throw CalibrationError("estimate_gbm: time grid must be uniform");

  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    mean += std::log(series.values[i + 1] / series.values[i]);
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::log(series.values[i + 1] / series.values[i]) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  CalibrationResult res;
  res.intercept = series.values.front();
  res.mu_hat = mean / dt;
  res.sigma_hat = sd / std::sqrt(dt);
  res.degenerate = res.sigma_hat < 1e-12;
  const double half =
      1.96 * res.sigma_hat / std::sqrt(static_cast<double>(n) * dt);
  res.mu_ci_low = res.mu_hat - half;
  res.mu_ci_high = res.mu_hat + half;
  return res;
}

CalibrationResult calibrate(const HourlySeries& series,
                            const std::vector<double>& frequencies) {
  DeseasonalizeResult de = deseasonalize(series, frequencies);
  CalibrationResult res = estimate_gbm(de.residual);
  res.intercept = std::exp(de.log_intercept);
  res.seasonal_components = std::move(de.components);
  return res;
}

GbmSpec to_gbm_spec(const CalibrationResult& result, bool martingale) {
  GbmSpec g;
  g.initial_value = result.intercept;
  g.volatility = result.sigma_hat;
  g.drift = martingale ? -0.5 * result.sigma_hat * result.sigma_hat
                       : result.mu_hat;
  return g;
}

}  // namespace rec
