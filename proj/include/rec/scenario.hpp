#pragma once

#include <string>

#include "rec/errors.hpp"

namespace rec {

/// Number of hours per (non-leap) year; annual rates in config files are
/// converted to hourly rates with this factor.
inline constexpr double kHoursPerYear = 8760.0;

/// Parameters of one geometric Brownian motion
///   X(s) = initial_value * exp(drift * s + volatility * W(s)).
/// Time unit is hours; volatility is per sqrt(hour).
struct GbmSpec {
  double initial_value = 0.0;  // EUR/MWh or MW
  double drift = 0.0;          // 1/h
  double volatility = 0.0;     // 1/sqrt(h)
};

/// Replaces the drift with -volatility^2/2 so the level process has
/// constant expectation. Volatility and initial value are unchanged.
GbmSpec martingale_adjust(const GbmSpec& g);

/// All exogenous constants and initial states of the two-member community.
struct MarketScenario {
  GbmSpec spot_price;      // X_v, sale price of electricity
  GbmSpec purchase_price;  // X_c, retail price paid by the household
  GbmSpec gas_price;       // P, spot gas price
  GbmSpec demand;          // D, household power demand

  double rho_c = 0.0;    // Corr(W, W_c), demand vs purchase price
  double r = 0.0;        // discount rate, 1/h
  double lambda = 0.0;   // incentive expiry intensity, 1/h
  double Z = 0.0;        // self-consumption incentive, EUR/MWh
  double c_h = 0.0;      // PV installation cost, EUR/MW
  double c_b = 0.0;      // turbine installation cost, EUR/MW
  double theta_h = 0.0;  // household installation cap, MW
  double theta_b = 0.0;  // biogas installation cap, MW
  double K_g = 0.0;      // gas production capacity, m^3
  double b = 0.0;        // gas-to-power conversion factor, MW/m^3
};

/// Throws ValidationError on the first violated structural invariant:
/// positive prices/costs/caps, |rho_c| <= 1, d < theta_h + theta_b,
/// theta_b <= b * K_g.
void validate(const MarketScenario& s);

/// Discount rates net of the expected growth rate of each process.
/// All five are strictly positive when produced by compute_net_rates.
struct NetRates {
  double r_v = 0.0;
  double r_p = 0.0;
  double r_c = 0.0;
  double r_d = 0.0;
  double r_cd = 0.0;
};

/// r_v = r - mu_v - sigma_v^2/2 (and analogues);
/// r_cd = r_c + r_d - r - rho_c * sigma_c * sigma_d.
/// Throws AssumptionViolation naming every non-positive rate.
NetRates compute_net_rates(const MarketScenario& s);

}  // namespace rec
