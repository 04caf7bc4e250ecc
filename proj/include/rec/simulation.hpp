#pragma once

#include <cstdint>

#include "rec/payoffs.hpp"

namespace rec {

/// Monte Carlo run configuration. `horizon` truncates the infinite-horizon
/// integrals at T hours; `step` is the trapezoidal time step.
struct McConfig {
  std::int64_t paths = 10000;
  double horizon = 0.0;  // hours; must be a multiple of step
  double step = 1.0;     // hours
  std::uint64_t seed = 0;

  void validate() const;  // throws ValidationError
};

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::int64_t paths_used = 0;
};

enum class McMember { household, biogas };

/// Horizon (a multiple of `step`) at which every discounted tail term is
/// below 1e-4 of its time-zero value.
double suggested_horizon(const MarketScenario& s, const NetRates& rates,
                         double step);

/// Empirical incentive value with the expiry time sampled, tau ~ Exp(lambda)
/// independent of the demand path; discounting at r, integration to
/// min(tau, horizon).
McEstimate simulate_w_tau(const MarketScenario& s, const InstallationPair& y,
                          const McConfig& cfg);

/// Empirical incentive value with the expiry integrated out: discounting at
/// r + lambda over the full horizon. Agrees with simulate_w_tau in
/// expectation.
McEstimate simulate_w_killed(const MarketScenario& s, const InstallationPair& y,
                             const McConfig& cfg);

/// Empirical incentive-augmented payoff of one member, with correlated
/// (demand, purchase-price) shocks and the incentive term discounted at
/// r + lambda.
McEstimate simulate_payoff(const MarketScenario& s, const InstallationPair& y,
                           double beta, const McConfig& cfg, McMember member);

}  // namespace rec
