#include <doctest.h>

#include <cmath>

#include "rec/game.hpp"
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

// Brute-force argmax of the household payoff over its box.
double grid_best_household(const Model& m, double y_b, double beta, int n) {
  double best_y = 0.0;
  double best_v = -1e300;
  for (int i = 0; i <= n; ++i) {
    const double y_h = m.s.theta_h * i / n;
    const double v = j_h(m.s, m.rates, m.g, m.c, {y_h, y_b}, beta);
    if (v > best_v) {
      best_v = v;
      best_y = y_h;
    }
  }
  return best_y;
}

double grid_best_biogas(const Model& m, double y_h, double beta, int n) {
  double best_y = 0.0;
  double best_v = -1e300;
  for (int i = 0; i <= n; ++i) {
    const double y_b = m.s.theta_b * i / n;
    const double v = j_b(m.s, m.rates, m.g, m.c, {y_h, y_b}, beta);
    if (v > best_v) {
      best_v = v;
      best_y = y_b;
    }
  }
  return best_y;
}

}  // namespace

TEST_CASE("threshold identities") {
  const Model m(testing::example1());
  CHECK(m.t.beta_h < 0.0);        // g_h > 0
  CHECK(1.0 - m.t.beta_b > 0.0);  // g_b < 0
  CHECK(m.t.beta_h / m.g.g_h ==
        doctest::Approx((1.0 - m.t.beta_b) / m.g.g_b).epsilon(1e-10));
  CHECK(m.t.beta_n ==
        doctest::Approx(m.t.beta_h / (1.0 - m.t.beta_b + m.t.beta_h))
            .epsilon(1e-10));

  // Reference value with the documented injected biogas gain.
  UnitGains inj = m.g;
  inj.g_b = -6.256e6;
  const Thresholds t2 = thresholds(inj, m.c, m.s);
  CHECK(t2.beta_b == doctest::Approx(-42.6169).epsilon(1e-4));

  UnitGains sym{-5.0e5, -5.0e5};
  CHECK(thresholds(sym, m.c, m.s).beta_n == doctest::Approx(0.5));
  UnitGains degenerate{5.0e5, -5.0e5};
  CHECK_THROWS_AS(thresholds(degenerate, m.c, m.s), UndefinedBetaN);
}

TEST_CASE("threshold sign equivalences and continuum existence") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const Model m(testing::random_tame(rng));
    if (m.g.g_h + m.g.g_b == 0.0) continue;
    CHECK((m.t.beta_h > 0.0) == (m.g.g_h < 0.0));
    CHECK((1.0 - m.t.beta_b > 0.0) == (m.g.g_b < 0.0));
    const bool order = m.t.beta_h < m.t.beta_b;
    const bool cond = m.s.Z * m.c.B1 * (m.c.m2 - 1.0) < m.g.g_h + m.g.g_b;
    CHECK(order == cond);
  }
}

TEST_CASE("best responses: corner cases") {
  const Model m(testing::example1());
  // g_h > 0: full install regardless.
  CHECK(best_response_household(m.s, m.g, m.c, m.t, 0.1, 0.3) == m.s.theta_h);
  // g_b < 0 and share too small: nothing.
  CHECK(best_response_biogas(m.s, m.g, m.c, m.t, 0.1, 0.9) == 0.0);
}

TEST_CASE("best responses beat a fine grid") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ub(0.05, 0.95);
  const int n = 10000;
  for (int i = 0; i < 60; ++i) {
    const Model m(i % 2 == 0 ? testing::random_interior(rng)
                             : testing::random_tame(rng));
    for (int k = 0; k < 5; ++k) {
      const double beta = ub(rng);
      const double y_b = ub(rng) * m.s.theta_b;
      const double br = best_response_household(m.s, m.g, m.c, m.t, y_b, beta);
      const double gb = grid_best_household(m, y_b, beta, n);
      CHECK(std::abs(br - gb) <= m.s.theta_h / n + 1e-12);
      const double jbr = j_h(m.s, m.rates, m.g, m.c, {br, y_b}, beta);
      const double jgb = j_h(m.s, m.rates, m.g, m.c, {gb, y_b}, beta);
      CHECK(jbr >= jgb - 1e-9 * std::abs(jgb));

      const double y_h = ub(rng) * m.s.theta_h;
      const double brb = best_response_biogas(m.s, m.g, m.c, m.t, y_h, beta);
      const double gbb = grid_best_biogas(m, y_h, beta, n);
      CHECK(std::abs(brb - gbb) <= m.s.theta_b / n + 1e-12);
    }
  }
}

TEST_CASE("aggregate ordering vs demand") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 40; ++i) {
    const Model m(testing::random_interior(rng));
    if (!(m.t.beta_h > 0.0 && m.t.beta_h < 1.0)) continue;
    CHECK(aggregate_vs_demand(m.t, m.t.beta_h) == DemandOrdering::equal);
    CHECK(aggregate_vs_demand(m.t, m.t.beta_h * 1.1) ==
          DemandOrdering::exceeds);
    CHECK(aggregate_vs_demand(m.t, m.t.beta_h * 0.9) == DemandOrdering::below);
    // The interior best response reproduces the ordering in installations.
    const double br = best_response_household(m.s, m.g, m.c, m.t,
                                              0.0, m.t.beta_h * 1.05);
    if (br > 0.0 && br < m.s.theta_h)
      CHECK(br > m.s.demand.initial_value);
  }
}

TEST_CASE("equilibrium taxonomy rows") {
  const Model m1(testing::example1());
  SUBCASE("base case: household max, no community") {
    // At beta = 0.2 the biogas member is interior-eligible but its target
    // clamps to zero against theta_h, so no community forms.
    const EquilibriumOutcome eq =
        nash_equilibrium(m1.s, m1.g, m1.c, m1.t, 0.2);
    CHECK(eq.case_label == EquilibriumCase::household_max_biogas_below);
    CHECK(eq.installs.y_h == m1.s.theta_h);
    CHECK(eq.installs.y_b == 0.0);
    CHECK_FALSE(eq.community_formed);
  }
  SUBCASE("both positive: full installs") {
    const Model m2(testing::example2());
    const EquilibriumOutcome eq =
        nash_equilibrium(m2.s, m2.g, m2.c, m2.t, 0.5);
    CHECK(eq.case_label == EquilibriumCase::both_gains_positive);
    CHECK(eq.installs.y_h == m2.s.theta_h);
    CHECK(eq.installs.y_b == m2.s.theta_b);
    CHECK(eq.community_formed);
  }
  SUBCASE("both dead: no installs") {
    MarketScenario s = testing::example1();
    s.c_h = 1e9;
    s.c_b = 1e9;
    s.Z = 1e-3;
    const Model m(s);
    const EquilibriumOutcome eq = nash_equilibrium(m.s, m.g, m.c, m.t, 0.5);
    CHECK(eq.case_label == EquilibriumCase::no_community_both_zero);
    CHECK(eq.installs.y_h == 0.0);
    CHECK(eq.installs.y_b == 0.0);
    CHECK_FALSE(eq.community_formed);
  }
}

TEST_CASE("unique equilibria are best-response fixed points") {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> ub(0.05, 0.95);
  int checked = 0;
  for (int i = 0; checked < 150 && i < 400; ++i) {
    const Model m(i % 2 == 0 ? testing::random_interior(rng)
                             : testing::random_tame(rng));
    const double beta = ub(rng);
    if (std::abs(beta - m.t.beta_n) <=
        1e-9 * std::max(1.0, std::abs(m.t.beta_n)))
      continue;
    const EquilibriumOutcome eq = nash_equilibrium(m.s, m.g, m.c, m.t, beta);
    const double brh = best_response_household(m.s, m.g, m.c, m.t,
                                               eq.installs.y_b, beta);
    const double brb = best_response_biogas(m.s, m.g, m.c, m.t,
                                            eq.installs.y_h, beta);
    CHECK(eq.installs.y_h == doctest::Approx(brh).epsilon(1e-9));
    CHECK(eq.installs.y_b == doctest::Approx(brb).epsilon(1e-9));
    CHECK((eq.community_formed == (eq.installs.y_b > 0.0)));
    ++checked;
  }
  CHECK(checked == 150);
}

TEST_CASE("no profitable unilateral deviation") {
  std::mt19937_64 rng(321);
  std::uniform_real_distribution<double> ub(0.05, 0.95);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Model m(i % 2 == 0 ? testing::random_interior(rng)
                             : testing::random_tame(rng));
    const double beta = ub(rng);
    const EquilibriumOutcome eq = nash_equilibrium(m.s, m.g, m.c, m.t, beta);
    const double jh0 =
        j_h(m.s, m.rates, m.g, m.c, eq.installs, beta);
    const double jb0 =
        j_b(m.s, m.rates, m.g, m.c, eq.installs, beta);
    for (int k = 0; k < 50; ++k) {
      const double dev_h = u01(rng) * m.s.theta_h;
      const double dev_b = u01(rng) * m.s.theta_b;
      const double jh =
          j_h(m.s, m.rates, m.g, m.c, {dev_h, eq.installs.y_b}, beta);
      const double jb =
          j_b(m.s, m.rates, m.g, m.c, {eq.installs.y_h, dev_b}, beta);
      CHECK(jh <= jh0 + 1e-6 * std::abs(jh0) + 1e-9);
      CHECK(jb <= jb0 + 1e-6 * std::abs(jb0) + 1e-9);
    }
  }
}

TEST_CASE("continuum equilibrium at beta_n") {
  std::mt19937_64 rng(808);
  int found = 0;
  for (int i = 0; i < 200 && found < 20; ++i) {
    const Model m(testing::random_interior(rng));
    const double rl = m.s.r + m.s.lambda;
    const double bn = m.t.beta_n;
    if (!(bn > 0.02 && bn < 0.98)) continue;
    if (m.g.g_h + m.s.Z * bn / rl <= 0.0) continue;
    if (m.g.g_b + m.s.Z * (1.0 - bn) / rl <= 0.0) continue;
    const EquilibriumOutcome eq = nash_equilibrium(m.s, m.g, m.c, m.t, bn);
    REQUIRE(eq.aggregate_target.has_value());
    const double target = *eq.aggregate_target;
    if (target > m.s.theta_h + m.s.theta_b) continue;  // clamped at the caps
    CHECK(eq.installs.aggregate() == doctest::Approx(target).epsilon(1e-9));
    // Any in-box split of the target is a fixed point of the best responses.
    for (double alpha : {0.25, 0.5, 0.75}) {
      const EquilibriumOutcome alt =
          nash_equilibrium(m.s, m.g, m.c, m.t, bn, alpha);
      CHECK(alt.installs.aggregate() == doctest::Approx(target).epsilon(1e-9));
      if (alt.installs.y_h > 1e-9 && alt.installs.y_h < m.s.theta_h - 1e-9 &&
          alt.installs.y_b > 1e-9 && alt.installs.y_b < m.s.theta_b - 1e-9) {
        CHECK(std::abs(dj_h(m.s, m.g, m.c, alt.installs, bn)) <=
              1e-6 * std::abs(m.g.g_h));
        CHECK(std::abs(dj_b(m.s, m.g, m.c, alt.installs, bn)) <=
              1e-6 * std::abs(m.g.g_b));
      }
    }
    ++found;
  }
  CHECK(found >= 10);
}

TEST_CASE("case labels are stable strings") {
  CHECK(to_string(EquilibriumCase::both_gains_positive) ==
        "both_gains_positive");
  CHECK(to_string(EquilibriumCase::continuum_above) == "continuum_above");
  CHECK(to_string(EquilibriumCase::no_community_both_zero) ==
        "no_community_both_zero");
}
