#include "rec/game.hpp"

#include <algorithm>
#include <cmath>

namespace rec {

namespace {

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

double pow_pos(double base, double exponent) {
  return std::exp(exponent * std::log(base));
}

// Aggregate installation targeted by the household's interior first-order
// condition, branch selected by beta vs beta_h.
double household_target(const MarketScenario& s, const UnitGains& g,
                        const IncentiveCoefficients& c, const Thresholds& t,
                        double beta) {
  const double d = s.demand.initial_value;
  if (beta > t.beta_h) return d * pow_pos(beta / t.beta_h, 1.0 / c.m2);
  const double zrl = s.Z / (s.r + s.lambda);
  const double num = g.g_h / t.beta_h + zrl;
  const double den = g.g_h / beta + zrl;
  return d * pow_pos(num / den, 1.0 / c.m1);
}

double biogas_target(const MarketScenario& s, const UnitGains& g,
                     const IncentiveCoefficients& c, const Thresholds& t,
                     double beta) {
  const double d = s.demand.initial_value;
  if (beta < t.beta_b)
    return d * pow_pos((1.0 - beta) / (1.0 - t.beta_b), 1.0 / c.m2);
  const double zrl = s.Z / (s.r + s.lambda);
  const double num = g.g_b / (1.0 - t.beta_b) + zrl;
  const double den = g.g_b / (1.0 - beta) + zrl;
  return d * pow_pos(num / den, 1.0 / c.m1);
}

bool near(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::abs(b));
}

}  // namespace

Thresholds thresholds(const UnitGains& g, const IncentiveCoefficients& c,
                      const MarketScenario& s) {
  const double k = s.Z * c.B1 * (1.0 - c.m2);  // strictly positive
  Thresholds t;
  t.beta_h = -g.g_h / k;
  t.beta_b = 1.0 + g.g_b / k;
  if (g.g_h + g.g_b == 0.0)
    throw UndefinedBetaN("beta_n is undefined when g_h + g_b = 0");
  t.beta_n = g.g_h / (g.g_h + g.g_b);
  return t;
}

double best_response_household(const MarketScenario& s, const UnitGains& g,
                               const IncentiveCoefficients& c,
                               const Thresholds& t, double y_b, double beta) {
  if (g.g_h >= 0.0) return s.theta_h;
  if (g.g_h + s.Z * beta / (s.r + s.lambda) <= 0.0) return 0.0;
  return clamp(household_target(s, g, c, t, beta) - y_b, 0.0, s.theta_h);
}

double best_response_biogas(const MarketScenario& s, const UnitGains& g,
                            const IncentiveCoefficients& c,
                            const Thresholds& t, double y_h, double beta) {
  if (g.g_b >= 0.0) return s.theta_b;
  if (g.g_b + s.Z * (1.0 - beta) / (s.r + s.lambda) <= 0.0) return 0.0;
  return clamp(biogas_target(s, g, c, t, beta) - y_h, 0.0, s.theta_b);
}

DemandOrdering aggregate_vs_demand(const Thresholds& t, double beta) {
  if (near(beta, t.beta_h, 1e-9)) return DemandOrdering::equal;
  return beta > t.beta_h ? DemandOrdering::exceeds : DemandOrdering::below;
}

std::string to_string(EquilibriumCase c) {
  switch (c) {
    case EquilibriumCase::both_gains_positive: return "both_gains_positive";
    case EquilibriumCase::household_zero_biogas_max: return "household_zero_biogas_max";
    case EquilibriumCase::household_above_biogas_max: return "household_above_biogas_max";
    case EquilibriumCase::household_below_biogas_max: return "household_below_biogas_max";
    case EquilibriumCase::household_max_biogas_above: return "household_max_biogas_above";
    case EquilibriumCase::household_max_biogas_below: return "household_max_biogas_below";
    case EquilibriumCase::household_zero_biogas_above: return "household_zero_biogas_above";
    case EquilibriumCase::household_zero_biogas_below: return "household_zero_biogas_below";
    case EquilibriumCase::continuum_above: return "continuum_above";
    case EquilibriumCase::continuum_below: return "continuum_below";
    case EquilibriumCase::interior_household_only: return "interior_household_only";
    case EquilibriumCase::interior_biogas_only: return "interior_biogas_only";
    case EquilibriumCase::no_community_household_max: return "no_community_household_max";
    case EquilibriumCase::no_community_both_zero: return "no_community_both_zero";
    case EquilibriumCase::no_community_household_above: return "no_community_household_above";
    case EquilibriumCase::no_community_household_below: return "no_community_household_below";
  }
  return "unknown";
}

EquilibriumOutcome nash_equilibrium(const MarketScenario& s, const UnitGains& g,
                                    const IncentiveCoefficients& c,
                                    const Thresholds& t, double beta,
                                    double continuum_alpha) {
  const double rl = s.r + s.lambda;
  const bool h_pos = g.g_h >= 0.0;
  const bool h_dead = !h_pos && g.g_h + s.Z * beta / rl <= 0.0;
  const bool b_pos = g.g_b >= 0.0;
  const bool b_dead = !b_pos && g.g_b + s.Z * (1.0 - beta) / rl <= 0.0;

  EquilibriumOutcome out;
  auto set = [&](EquilibriumCase label, double y_h, double y_b) {
    out.case_label = label;
    out.installs = {y_h, y_b};
    out.community_formed = y_b > 0.0;
  };

  if (b_pos) {
    if (h_pos) {
      set(EquilibriumCase::both_gains_positive, s.theta_h, s.theta_b);
    } else if (h_dead) {
      set(EquilibriumCase::household_zero_biogas_max, 0.0, s.theta_b);
    } else {
      const double y_h = clamp(household_target(s, g, c, t, beta) - s.theta_b,
                               0.0, s.theta_h);
      set(beta > t.beta_h ? EquilibriumCase::household_above_biogas_max
                          : EquilibriumCase::household_below_biogas_max,
          y_h, s.theta_b);
    }
    return out;
  }

  if (b_dead) {
    if (h_pos) {
      set(EquilibriumCase::no_community_household_max, s.theta_h, 0.0);
    } else if (h_dead) {
      set(EquilibriumCase::no_community_both_zero, 0.0, 0.0);
    } else {
      const double y_h = clamp(household_target(s, g, c, t, beta), 0.0, s.theta_h);
      set(beta > t.beta_h ? EquilibriumCase::no_community_household_above
                          : EquilibriumCase::no_community_household_below,
          y_h, 0.0);
    }
    return out;
  }

  // Biogas interior-eligible from here on.
  if (h_pos) {
    const double y_b = clamp(biogas_target(s, g, c, t, beta) - s.theta_h,
                             0.0, s.theta_b);
    set(beta < t.beta_b ? EquilibriumCase::household_max_biogas_above
                        : EquilibriumCase::household_max_biogas_below,
        s.theta_h, y_b);
    return out;
  }
  if (h_dead) {
    const double y_b = clamp(biogas_target(s, g, c, t, beta), 0.0, s.theta_b);
    set(beta < t.beta_b ? EquilibriumCase::household_zero_biogas_above
                        : EquilibriumCase::household_zero_biogas_below,
        0.0, y_b);
    return out;
  }

  // Both interior-eligible: a continuum of equilibria exists only at
  // beta = beta_n; elsewhere the member wanting the larger aggregate
  // crowds the other out (up to box bounds).
  if (near(beta, t.beta_n, 1e-9)) {
    double target;
    EquilibriumCase label;
    if (t.beta_h < t.beta_n && t.beta_n < t.beta_b) {
      target = s.demand.initial_value *
               pow_pos(s.Z * c.B1 * (c.m2 - 1.0) / (g.g_h + g.g_b), 1.0 / c.m2);
      label = EquilibriumCase::continuum_above;
    } else {
      target = s.demand.initial_value *
               pow_pos(s.Z * c.C1 * (c.m1 - 1.0) / (g.g_h + g.g_b + s.Z / rl),
                       1.0 / c.m1);
      label = EquilibriumCase::continuum_below;
    }
    double y_h = std::min(s.theta_h, std::max(continuum_alpha * target,
                                              target - s.theta_b));
    y_h = std::max(y_h, 0.0);
    const double y_b = clamp(target - y_h, 0.0, s.theta_b);
    set(label, y_h, y_b);
    out.aggregate_target = target;
    return out;
  }

  const double target_h = household_target(s, g, c, t, beta);
  const double target_b = biogas_target(s, g, c, t, beta);
  if (target_h >= target_b) {
    const double y_h = std::min(s.theta_h, target_h);
    const double y_b = y_h >= target_b ? 0.0 : clamp(target_b - y_h, 0.0, s.theta_b);
    set(EquilibriumCase::interior_household_only, y_h, y_b);
  } else {
    const double y_b = std::min(s.theta_b, target_b);
    const double y_h = y_b >= target_h ? 0.0 : clamp(target_h - y_b, 0.0, s.theta_h);
    set(EquilibriumCase::interior_biogas_only, y_h, y_b);
  }
  return out;
}

}  // namespace rec
