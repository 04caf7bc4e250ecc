#include <doctest.h>

#include <cmath>

#include "rec/bargaining.hpp"
#include "support/scenarios.hpp"

using namespace rec;

namespace {

struct Model {
  MarketScenario s;
  NetRates rates;
  UnitGains g;
  IncentiveCoefficients c;
  Thresholds t;
  explicit Model(const MarketScenario& sc)
      : s(sc),
        rates(compute_net_rates(sc)),
        g(unit_gains(sc, rates)),
        c(coefficients(sc, rates)),
        t(thresholds(g, c, sc)) {}
};

double direct_product(const Model& m, double beta) {
  const EquilibriumOutcome eq = nash_equilibrium(m.s, m.g, m.c, m.t, beta);
  const DisagreementPoints dp = disagreement_points(m.s, m.rates, m.g);
  return (j_h(m.s, m.rates, m.g, m.c, eq.installs, beta) - dp.d_h) *
         (j_b(m.s, m.rates, m.g, m.c, eq.installs, beta) - dp.d_b);
}

}  // namespace

TEST_CASE("nash_product matches the direct payoff-gap product") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ub(0.02, 0.98);
  for (int i = 0; i < 60; ++i) {
    const Model m(i % 2 == 0 ? testing::random_interior(rng)
                             : testing::random_tame(rng));
    for (int k = 0; k < 5; ++k) {
      const double beta = ub(rng);
      const double f = nash_product(m.s, m.rates, m.g, m.c, m.t, beta);
      const double d = direct_product(m, beta);
      CHECK(f == doctest::Approx(d).epsilon(1e-9));
    }
  }
}

TEST_CASE("symmetric case is solved at one half") {
  const Model m(testing::example2());
  REQUIRE(m.g.g_h >= 0.0);
  REQUIRE(m.g.g_b >= 0.0);
  // F = beta (1 - beta) Z^2 w^2: symmetric, vanishing at the edges.
  const double f03 = nash_product(m.s, m.rates, m.g, m.c, m.t, 0.3);
  const double f07 = nash_product(m.s, m.rates, m.g, m.c, m.t, 0.7);
  CHECK(f03 == doctest::Approx(f07).epsilon(1e-12));
  CHECK(nash_product(m.s, m.rates, m.g, m.c, m.t, 1e-9) <= 1e-6 * f03);

  const BargainingSolution sol = solve_bargaining(m.s);
  CHECK(sol.beta_star == 0.5);
  CHECK(sol.outcome.installs.y_h == m.s.theta_h);
  CHECK(sol.outcome.installs.y_b == m.s.theta_b);
  CHECK(sol.community_formed);
  CHECK(sol.j_h_star >= sol.d_h);
  CHECK(sol.j_b_star >= sol.d_b);
  CHECK(sol.nash_product ==
        doctest::Approx((sol.j_h_star - sol.d_h) * (sol.j_b_star - sol.d_b))
            .epsilon(1e-12));
}

TEST_CASE("solver never loses to a dense beta grid") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 12; ++i) {
    const Model m(i % 2 == 0 ? testing::random_interior(rng)
                             : testing::random_tame(rng));
    const BargainingSolution sol = solve_bargaining(m.s);
    double grid_best = -1e300;
    for (int k = 1; k < 10000; ++k) {
      grid_best = std::max(
          grid_best, nash_product(m.s, m.rates, m.g, m.c, m.t, k / 10000.0));
    }
    CHECK(sol.nash_product >= grid_best - 1e-8 * std::abs(grid_best));
  }
}

TEST_CASE("individual rationality at the optimum") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 40; ++i) {
    const Model m(i % 2 == 0 ? testing::random_interior(rng)
                             : testing::random_tame(rng));
    const BargainingSolution sol = solve_bargaining(m.s);
    if (sol.community_formed) {
      CHECK(sol.j_h_star >= sol.d_h - 1e-9 * std::abs(sol.d_h));
      CHECK(sol.j_b_star >= sol.d_b - 1e-9 * std::abs(sol.d_b));
    }
    CHECK(sol.nash_product >= -1e-9);
  }
}

TEST_CASE("community never forms when the biogas share cannot pay") {
  // Gas revenue so high that g_b + Z/(r+lambda) < 0: no beta forms it.
  MarketScenario s = testing::example1();
  s.gas_price.initial_value = 300.0;
  const Model m(s);
  REQUIRE(m.g.g_b + m.s.Z / (m.s.r + m.s.lambda) < 0.0);
  for (double beta : {0.001, 0.25, 0.5, 0.75, 0.999}) {
    const EquilibriumOutcome eq = nash_equilibrium(m.s, m.g, m.c, m.t, beta);
    CHECK_FALSE(eq.community_formed);
    CHECK(eq.installs.y_b == 0.0);
  }
  const BargainingSolution sol = solve_bargaining(s);
  CHECK_FALSE(sol.community_formed);
}

TEST_CASE("shapley share is one half, always") {
  CHECK(shapley_share() == 0.5);
}
