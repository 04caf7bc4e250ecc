#include "rec/bargaining.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

namespace rec {

namespace {

double objective(const MarketScenario& s, const NetRates& rates,
                 const UnitGains& g, const IncentiveCoefficients& c,
                 const Thresholds& t, double beta, double alpha) {
  const EquilibriumOutcome eq = nash_equilibrium(s, g, c, t, beta, alpha);
  const double wv =
      w(c, s, rates, eq.installs.y_h, eq.installs.y_b, s.demand.initial_value);
  const double zw = s.Z * wv;
  const double base = beta * (1.0 - beta) * zw * zw;
  if (g.g_h >= 0.0 && g.g_b >= 0.0) return base;
  if (g.g_h < 0.0 && g.g_b >= 0.0)
    return base + (1.0 - beta) * zw * g.g_h * eq.installs.y_h;
  if (g.g_h >= 0.0 && g.g_b < 0.0)
    return base + beta * zw * g.g_b * eq.installs.y_b;
  return base + beta * zw * g.g_b * eq.installs.y_b +
         (1.0 - beta) * zw * g.g_h * eq.installs.y_h +
         eq.installs.y_h * eq.installs.y_b * g.g_h * g.g_b;
}

}  // namespace

double nash_product(const MarketScenario& s, const NetRates& rates,
                    const UnitGains& g, const IncentiveCoefficients& c,
                    const Thresholds& t, double beta, double continuum_alpha) {
  return objective(s, rates, g, c, t, beta, continuum_alpha);
}

BargainingSolution solve_bargaining(const MarketScenario& s, int grid,
                                    double continuum_alpha) {
  validate(s);
  const NetRates rates = compute_net_rates(s);
  const UnitGains g = unit_gains(s, rates);
  const IncentiveCoefficients c = coefficients(s, rates);
  const Thresholds t = thresholds(g, c, s);

  auto finish = [&](double beta, std::optional<double> tied) {
    BargainingSolution sol;
    sol.beta_star = beta;
    sol.outcome = nash_equilibrium(s, g, c, t, beta, continuum_alpha);
    const DisagreementPoints dp = disagreement_points(s, rates, g);
    sol.d_h = dp.d_h;
    sol.d_b = dp.d_b;
    sol.j_h_star = j_h(s, rates, g, c, sol.outcome.installs, beta);
    sol.j_b_star = j_b(s, rates, g, c, sol.outcome.installs, beta);
    sol.nash_product = (sol.j_h_star - dp.d_h) * (sol.j_b_star - dp.d_b);
    sol.community_formed = sol.outcome.community_formed;
    sol.tied_beta = tied;
    return sol;
  };

  // Symmetric case: F = beta (1 - beta) Z^2 w^2 with w independent of beta.
  if (g.g_h >= 0.0 && g.g_b >= 0.0) return finish(0.5, std::nullopt);

  const double eps = 1e-6;
  std::set<double> cut_set = {eps, 1.0 - eps};
  for (double x : {t.beta_h, t.beta_b, t.beta_n})
    if (x > eps && x < 1.0 - eps) cut_set.insert(x);
  const std::vector<double> cuts(cut_set.begin(), cut_set.end());

  auto f = [&](double beta) { return objective(s, rates, g, c, t, beta, continuum_alpha); };

  double best_beta = eps;
  double best_val = f(eps);
  std::optional<double> tied;
  auto consider = [&](double beta, double val) {
    const double tol = 1e-9 * std::max(1.0, std::abs(best_val));
    if (val > best_val + tol) {
      best_val = val;
      best_beta = beta;
      tied.reset();
    } else if (val > best_val - tol) {
      // Equal-height maximum: keep the smaller beta, report the other.
      if (beta < best_beta - 1e-6) {
        tied = best_beta;
        best_beta = beta;
        best_val = std::max(best_val, val);
      } else if (beta > best_beta + 1e-6) {
        tied = beta;
      }
    }
  };

  // F can jump at the cut points themselves (continuum share), so they are
  // evaluated explicitly in addition to the open segments between them.
  for (std::size_t i = 1; i < cuts.size(); ++i) consider(cuts[i], f(cuts[i]));

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    const int n = std::max(8, static_cast<int>(grid * (b - a)));
    double seg_beta = a;
    double seg_val = f(a);
    for (int k = 1; k <= n; ++k) {
      const double x = a + (b - a) * k / n;
      const double v = f(x);
      if (v > seg_val) {
        seg_val = v;
        seg_beta = x;
      }
    }
    double lo = std::max(a, seg_beta - (b - a) / n);
    double hi = std::min(b, seg_beta + (b - a) / n);
    while (hi - lo > 1e-9) {
      const double x1 = hi - inv_phi * (hi - lo);
      const double x2 = lo + inv_phi * (hi - lo);
      if (f(x1) < f(x2))
        lo = x1;
      else
        hi = x2;
    }
    const double refined = 0.5 * (lo + hi);
    consider(refined, f(refined));
  }

  return finish(best_beta, tied);
}

double shapley_share() { return 0.5; }

}  // namespace rec
