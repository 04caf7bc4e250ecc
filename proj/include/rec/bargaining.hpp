#pragma once

#include "rec/game.hpp"

namespace rec {

/// Result of the coordinator's problem: the incentive share maximizing the
/// product of the members' payoff gains over their disagreement points,
/// with the installation equilibrium re-solved at each candidate share.
struct BargainingSolution {
  double beta_star = 0.5;          // household share, in (0,1)
  EquilibriumOutcome outcome;      // equilibrium induced by beta_star
  double j_h_star = 0.0;           // EUR
  double j_b_star = 0.0;           // EUR
  double d_h = 0.0;                // EUR
  double d_b = 0.0;                // EUR
  double nash_product = 0.0;       // EUR^2
  bool community_formed = false;
  std::optional<double> tied_beta;  // equal-height maximum in another segment
};

/// Evaluates the bargaining objective F(beta) with installations re-solved
/// at beta. Expanded per sign case of (g_h, g_b); agrees with the direct
/// product (j_h - d_h)(j_b - d_b).
double nash_product(const MarketScenario& s, const NetRates& rates,
                    const UnitGains& g, const IncentiveCoefficients& c,
                    const Thresholds& t, double beta,
                    double continuum_alpha = 0.5);

/// Maximizes F over [1e-6, 1 - 1e-6], split at the threshold shares, by a
/// per-segment grid scan refined with golden-section search. The symmetric
/// case (both unit gains non-negative) returns exactly 0.5. Ties across
/// segments resolve to the smaller beta, with the alternative reported.
BargainingSolution solve_bargaining(const MarketScenario& s, int grid = 512,
                                    double continuum_alpha = 0.5);

/// Two-player Shapley split of the community surplus: each member gets half,
/// independently of the scenario.
double shapley_share();

}  // namespace rec
