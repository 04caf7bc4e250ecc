#include "rec/scenario.hpp"

#include <cmath>
#include <string>

namespace rec {

GbmSpec martingale_adjust(const GbmSpec& g) {
  GbmSpec out = g;
  out.drift = -0.5 * g.volatility * g.volatility;
  return out;
}

namespace {

void require(bool ok, const char* field, const char* msg) {
  if (!ok) throw ValidationError(field, msg);
}

void check_gbm(const GbmSpec& g, const std::string& name) {
  if (!(g.initial_value > 0.0))
    throw ValidationError(name + ".initial_value", "must be strictly positive");
  if (!(g.volatility > 0.0))
    throw ValidationError(name + ".volatility", "must be strictly positive");
  if (!std::isfinite(g.drift))
    throw ValidationError(name + ".drift", "must be finite");
}

}  // namespace

void validate(const MarketScenario& s) {
  check_gbm(s.spot_price, "spot_price");
  check_gbm(s.purchase_price, "purchase_price");
  check_gbm(s.gas_price, "gas_price");
  check_gbm(s.demand, "demand");

  require(s.rho_c >= -1.0 && s.rho_c <= 1.0, "rho_c", "must lie in [-1, 1]");
  require(s.r > 0.0, "r", "must be strictly positive");
  require(s.lambda > 0.0, "lambda", "must be strictly positive");
  require(s.Z > 0.0, "Z", "must be strictly positive");
  require(s.c_h > 0.0, "c_h", "must be strictly positive");
  require(s.c_b > 0.0, "c_b", "must be strictly positive");
  require(s.theta_h > 0.0, "theta_h", "must be strictly positive");
  require(s.theta_b > 0.0, "theta_b", "must be strictly positive");
  require(s.K_g > 0.0, "K_g", "must be strictly positive");
  require(s.b > 0.0, "b", "must be strictly positive");

  // The equilibrium taxonomy assumes the community demand can be covered.
  require(s.demand.initial_value < s.theta_h + s.theta_b, "demand.initial_value",
          "must be below theta_h + theta_b");
  // The turbine cannot exceed the gas-derived power.
  require(s.theta_b <= s.b * s.K_g + 1e-12 * s.b * s.K_g, "theta_b",
          "must not exceed b * K_g");
}

NetRates compute_net_rates(const MarketScenario& s) {
  auto net = [&](const GbmSpec& g) {
    return s.r - g.drift - 0.5 * g.volatility * g.volatility;
  };
  NetRates rates;
  rates.r_v = net(s.spot_price);
  rates.r_p = net(s.gas_price);
  rates.r_c = net(s.purchase_price);
  rates.r_d = net(s.demand);
  rates.r_cd = rates.r_c + rates.r_d - s.r -
               s.rho_c * s.purchase_price.volatility * s.demand.volatility;

  std::string bad;
  auto flag = [&](double v, const char* name) {
    if (!(v > 0.0)) {
      if (!bad.empty()) bad += ", ";
      bad += name;
    }
  };
  flag(rates.r_v, "r_v");
  flag(rates.r_p, "r_p");
  flag(rates.r_c, "r_c");
  flag(rates.r_d, "r_d");
  flag(rates.r_cd, "r_cd");
  if (!bad.empty()) throw AssumptionViolation(bad);
  return rates;
}

}  // namespace rec
