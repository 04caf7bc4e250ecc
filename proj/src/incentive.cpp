#include "rec/incentive.hpp"

#include <cmath>

namespace rec {

namespace {

// exp(e * log(b)) for strictly positive bases; keeps the power-law
// branches well defined for fractional exponents.
double pow_pos(double base, double exponent) {
  return std::exp(exponent * std::log(base));
}

}  // namespace

IncentiveCoefficients coefficients(const MarketScenario& s, const NetRates& rates) {
  if (!(rates.r_d > 0.0))
    throw RateViolation("r_d must be strictly positive for the incentive value");

  const double mu = s.demand.drift;
  const double sg2 = s.demand.volatility * s.demand.volatility;
  const double rl = s.r + s.lambda;

  IncentiveCoefficients c;
  const double disc = std::sqrt(mu * mu + 2.0 * rl * sg2);
  // Stable root extraction: compute the root far from cancellation first,
  // then the other one from m1 * m2 = -2 (r + lambda) / sigma_d^2.
  if (mu >= 0.0) {
    c.m1 = (-mu - disc) / sg2;
    c.m2 = -2.0 * rl / (sg2 * c.m1);
  } else {
    c.m2 = (-mu + disc) / sg2;
    c.m1 = -2.0 * rl / (sg2 * c.m2);
  }

  const double den = rl * (rates.r_d + s.lambda) * (c.m2 - c.m1);
  c.B1 = (c.m1 * mu + c.m1 * sg2 / 2.0 - rl) / den;
  c.C1 = (c.m2 * mu + c.m2 * sg2 / 2.0 - rl) / den;
  return c;
}

double w(const IncentiveCoefficients& c, const MarketScenario& s,
         const NetRates& rates, double y_h, double y_b, double d) {
  const double y = y_h + y_b;
  if (y <= 0.0 || d <= 0.0) return 0.0;
  const double rl = s.r + s.lambda;
  if (d < y)
    return c.B1 * pow_pos(y, 1.0 - c.m2) * pow_pos(d, c.m2) + d / (rates.r_d + s.lambda);
  return c.C1 * pow_pos(y, 1.0 - c.m1) * pow_pos(d, c.m1) + y / rl;
}

double w_partial(const IncentiveCoefficients& c, const MarketScenario& s,
                 double y_h, double y_b, double d) {
  const double y = y_h + y_b;
  if (y <= 0.0)
    throw DegenerateAggregate("w_partial is undefined at zero aggregate capacity");
  if (d < y) return c.B1 * (1.0 - c.m2) * pow_pos(d / y, c.m2);
  return c.C1 * (1.0 - c.m1) * pow_pos(d / y, c.m1) + 1.0 / (s.r + s.lambda);
}

double w_partial_zero_aggregate_limit(const MarketScenario& s) {
  return 1.0 / (s.r + s.lambda);
}

double w_d(const IncentiveCoefficients& c, const MarketScenario& s,
           const NetRates& rates, double y_h, double y_b, double d) {
  const double y = y_h + y_b;
  if (d < y)
    return c.B1 * c.m2 * pow_pos(y, 1.0 - c.m2) * pow_pos(d, c.m2 - 1.0) +
           1.0 / (rates.r_d + s.lambda);
  return c.C1 * c.m1 * pow_pos(y, 1.0 - c.m1) * pow_pos(d, c.m1 - 1.0);
}

double w_dd(const IncentiveCoefficients& c, const MarketScenario& s,
            double y_h, double y_b, double d) {
  (void)s;
  const double y = y_h + y_b;
  if (d < y)
    return c.B1 * c.m2 * (c.m2 - 1.0) * pow_pos(y, 1.0 - c.m2) * pow_pos(d, c.m2 - 2.0);
  return c.C1 * c.m1 * (c.m1 - 1.0) * pow_pos(y, 1.0 - c.m1) * pow_pos(d, c.m1 - 2.0);
}

}  // namespace rec
