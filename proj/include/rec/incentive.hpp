#pragma once

#include "rec/scenario.hpp"

namespace rec {

/// Constants of the closed-form self-consumption value w.
///
/// m1 and m2 are the roots of (sigma_d^2/2) m^2 + mu_d m - (r + lambda) = 0
/// with m1 < 0 < 1 < m2; B1 and C1 are the (negative) coefficients of the
/// two branches of w, tied together by the smooth-pasting identity
///   B1 (1 - m2) = C1 (1 - m1) + 1/(r + lambda).
struct IncentiveCoefficients {
  double m1 = 0.0;
  double m2 = 0.0;
  double B1 = 0.0;
  double C1 = 0.0;
};

/// Computes the coefficients from scenario parameters.
/// Requires rates.r_d > 0; throws RateViolation otherwise.
IncentiveCoefficients coefficients(const MarketScenario& s, const NetRates& rates);

/// Expected discounted self-consumption per unit of incentive,
///   w = E[ integral_0^tau e^{-r s} min(D(s), y_h + y_b) ds ],
/// in discounted MWh. Piecewise in d with the boundary d = y_h + y_b
/// assigned to the d >= y branch. Total on the closed positive orthant;
/// d = 0 and y_h + y_b = 0 both return 0.
double w(const IncentiveCoefficients& c, const MarketScenario& s,
         const NetRates& rates, double y_h, double y_b, double d);

/// Marginal value dw/dy (identical for both members). Strictly positive
/// and decreasing in the aggregate capacity.
/// Throws DegenerateAggregate when y_h + y_b = 0; the y -> 0+ limit is
/// w_partial_zero_aggregate_limit below.
double w_partial(const IncentiveCoefficients& c, const MarketScenario& s,
                 double y_h, double y_b, double d);

/// Limit of w_partial as the aggregate capacity tends to zero (the d >= y
/// branch power term vanishes since m1 < 0, leaving 1/(r + lambda)).
double w_partial_zero_aggregate_limit(const MarketScenario& s);

/// Analytic first and second d-derivatives of w, used by the ODE residual
/// checks.
double w_d(const IncentiveCoefficients& c, const MarketScenario& s,
           const NetRates& rates, double y_h, double y_b, double d);
double w_dd(const IncentiveCoefficients& c, const MarketScenario& s,
            double y_h, double y_b, double d);

}  // namespace rec
