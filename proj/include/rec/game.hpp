#pragma once

#include <optional>
#include <string>

#include "rec/payoffs.hpp"

namespace rec {

/// Threshold incentive shares of the two best responses and the continuum
/// share. beta_h > 0 iff g_h < 0; 1 - beta_b > 0 iff g_b < 0; and
/// beta_h / g_h = (1 - beta_b) / g_b always.
struct Thresholds {
  double beta_h = 0.0;
  double beta_b = 0.0;
  double beta_n = 0.0;  // g_h / (g_h + g_b)
};

/// Throws UndefinedBetaN when g_h + g_b = 0.
Thresholds thresholds(const UnitGains& g, const IncentiveCoefficients& c,
                      const MarketScenario& s);

/// Best response of one member to the other's installation, the unique
/// maximizer of its payoff over its box.
double best_response_household(const MarketScenario& s, const UnitGains& g,
                               const IncentiveCoefficients& c,
                               const Thresholds& t, double y_b, double beta);
double best_response_biogas(const MarketScenario& s, const UnitGains& g,
                            const IncentiveCoefficients& c,
                            const Thresholds& t, double y_h, double beta);

/// How the equilibrium aggregate installation compares with the community
/// demand, decided by beta vs beta_h.
enum class DemandOrdering { below, equal, exceeds };
DemandOrdering aggregate_vs_demand(const Thresholds& t, double beta);

/// One row of the equilibrium taxonomy. "above"/"below" refers to the
/// aggregate installation relative to the community demand.
enum class EquilibriumCase {
  both_gains_positive,            // (theta_h, theta_b)
  household_zero_biogas_max,      // (0, theta_b)
  household_above_biogas_max,     // household interior, beta > beta_h
  household_below_biogas_max,     // household interior, beta <= beta_h
  household_max_biogas_above,     // biogas interior, beta < beta_b
  household_max_biogas_below,     // biogas interior, beta >= beta_b
  household_zero_biogas_above,
  household_zero_biogas_below,
  continuum_above,                // beta = beta_n, beta_n in (beta_h, beta_b)
  continuum_below,                // beta = beta_n, beta_n outside
  interior_household_only,        // both interior-eligible, beta > beta_n
  interior_biogas_only,           // both interior-eligible, beta < beta_n
  no_community_household_max,     // (theta_h, 0)
  no_community_both_zero,         // (0, 0)
  no_community_household_above,
  no_community_household_below,
};

std::string to_string(EquilibriumCase c);

/// A Nash equilibrium of the installation game at a fixed beta.
/// For continuum cases, `installs` holds the configured split of the
/// aggregate target, which is reported in `aggregate_target`.
struct EquilibriumOutcome {
  EquilibriumCase case_label = EquilibriumCase::no_community_both_zero;
  InstallationPair installs;
  bool community_formed = false;
  std::optional<double> aggregate_target;  // set for continuum cases
};

/// Solves the simultaneous best-response system at a fixed beta in (0,1).
/// `continuum_alpha` selects the household fraction of the aggregate target
/// when beta equals beta_n (detected with relative tolerance 1e-9).
EquilibriumOutcome nash_equilibrium(const MarketScenario& s, const UnitGains& g,
                                    const IncentiveCoefficients& c,
                                    const Thresholds& t, double beta,
                                    double continuum_alpha = 0.5);

}  // namespace rec
