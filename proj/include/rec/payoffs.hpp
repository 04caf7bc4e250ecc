#pragma once

#include "rec/incentive.hpp"
#include "rec/scenario.hpp"

namespace rec {

/// Discounted net unit profits per MW of installed capacity:
///   g_h = x_v / r_v - c_h
///   g_b = x_v / r_v - p / r_p - c_b
struct UnitGains {
  double g_h = 0.0;  // EUR/MW
  double g_b = 0.0;  // EUR/MW
};

/// An installation decision pair, each within its box bound.
struct InstallationPair {
  double y_h = 0.0;  // MW, in [0, theta_h]
  double y_b = 0.0;  // MW, in [0, theta_b]
  double aggregate() const { return y_h + y_b; }
};

UnitGains unit_gains(const MarketScenario& s, const NetRates& rates);

/// No-incentive payoffs. j0_h depends only on y_h, j0_b only on y_b.
double j0_h(const MarketScenario& s, const NetRates& rates, const UnitGains& g,
            const InstallationPair& y);
double j0_b(const MarketScenario& s, const NetRates& rates, const UnitGains& g,
            const InstallationPair& y);

/// All-or-nothing optimum in absence of incentives: install the full cap
/// when the unit gain is non-negative, zero otherwise.
InstallationPair no_incentive_optimum(const UnitGains& g, const MarketScenario& s);

/// No-incentive payoffs evaluated at no_incentive_optimum; the members'
/// payoffs if they never enter the community.
struct DisagreementPoints {
  double d_h = 0.0;  // EUR
  double d_b = 0.0;  // EUR
};
DisagreementPoints disagreement_points(const MarketScenario& s,
                                       const NetRates& rates, const UnitGains& g);

/// Incentive-augmented payoffs: J = J0 + share * Z * w, where the
/// household share is beta and the biogas share is (1 - beta).
double j_h(const MarketScenario& s, const NetRates& rates, const UnitGains& g,
           const IncentiveCoefficients& c, const InstallationPair& y, double beta);
double j_b(const MarketScenario& s, const NetRates& rates, const UnitGains& g,
           const IncentiveCoefficients& c, const InstallationPair& y, double beta);

/// Own-variable partial derivatives of the incentive-augmented payoffs.
/// Throws DegenerateAggregate when y_h + y_b = 0.
double dj_h(const MarketScenario& s, const UnitGains& g,
            const IncentiveCoefficients& c, const InstallationPair& y, double beta);
double dj_b(const MarketScenario& s, const UnitGains& g,
            const IncentiveCoefficients& c, const InstallationPair& y, double beta);

}  // namespace rec
