#include "rec/payoffs.hpp"

namespace rec {

UnitGains unit_gains(const MarketScenario& s, const NetRates& rates) {
  UnitGains g;
  const double sale = s.spot_price.initial_value / rates.r_v;
  g.g_h = sale - s.c_h;
  g.g_b = sale - s.gas_price.initial_value / rates.r_p - s.c_b;
  return g;
}

double j0_h(const MarketScenario& s, const NetRates& rates, const UnitGains& g,
            const InstallationPair& y) {
  return y.y_h * g.g_h -
         s.purchase_price.initial_value * s.demand.initial_value / rates.r_cd;
}

double j0_b(const MarketScenario& s, const NetRates& rates, const UnitGains& g,
            const InstallationPair& y) {
  return y.y_b * g.g_b +
         s.gas_price.initial_value * s.b * s.K_g / rates.r_p;
}

InstallationPair no_incentive_optimum(const UnitGains& g, const MarketScenario& s) {
  InstallationPair y;
  y.y_h = g.g_h >= 0.0 ? s.theta_h : 0.0;
  y.y_b = g.g_b >= 0.0 ? s.theta_b : 0.0;
  return y;
}

DisagreementPoints disagreement_points(const MarketScenario& s,
                                       const NetRates& rates, const UnitGains& g) {
  const InstallationPair y = no_incentive_optimum(g, s);
  return {j0_h(s, rates, g, y), j0_b(s, rates, g, y)};
}

double j_h(const MarketScenario& s, const NetRates& rates, const UnitGains& g,
           const IncentiveCoefficients& c, const InstallationPair& y, double beta) {
  return j0_h(s, rates, g, y) + beta * s.Z * w(c, s, rates, y.y_h, y.y_b, s.demand.initial_value);
}

double j_b(const MarketScenario& s, const NetRates& rates, const UnitGains& g,
           const IncentiveCoefficients& c, const InstallationPair& y, double beta) {
  return j0_b(s, rates, g, y) +
         (1.0 - beta) * s.Z * w(c, s, rates, y.y_h, y.y_b, s.demand.initial_value);
}

double dj_h(const MarketScenario& s, const UnitGains& g,
            const IncentiveCoefficients& c, const InstallationPair& y, double beta) {
  return g.g_h + beta * s.Z * w_partial(c, s, y.y_h, y.y_b, s.demand.initial_value);
}

double dj_b(const MarketScenario& s, const UnitGains& g,
            const IncentiveCoefficients& c, const InstallationPair& y, double beta) {
  return g.g_b + (1.0 - beta) * s.Z * w_partial(c, s, y.y_h, y.y_b, s.demand.initial_value);
}

}  // namespace rec
