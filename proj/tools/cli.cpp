// Command-line front end: solve, sweep, calibrate, validate.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rec/bargaining.hpp"
#include "rec/calibration.hpp"
#include "rec/scenario_io.hpp"
#include "rec/simulation.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidateFail = 1;
constexpr int kExitInputError = 2;
constexpr int kExitSolverError = 3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw rec::ValidationError(out_path, "cannot open output file");
  out << text;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

struct SolveRow {
  rec::BargainingSolution sol;
};

std::vector<std::pair<std::string, std::string>> solution_fields(
    const rec::BargainingSolution& sol) {
  return {
      {"beta_star", fmt(sol.beta_star)},
      {"y_h", fmt(sol.outcome.installs.y_h)},
      {"y_b", fmt(sol.outcome.installs.y_b)},
      {"case", rec::to_string(sol.outcome.case_label)},
      {"j_h", fmt(sol.j_h_star)},
      {"j_b", fmt(sol.j_b_star)},
      {"d_h", fmt(sol.d_h)},
      {"d_b", fmt(sol.d_b)},
      {"nash_product", fmt(sol.nash_product)},
      {"community_formed", sol.community_formed ? "true" : "false"},
  };
}

int cmd_solve(const std::string& scenario_path, const std::string& out_path,
              const std::string& format) {
  std::vector<std::string> warnings;
  const rec::MarketScenario s = rec::load_scenario(scenario_path, &warnings);
  print_warnings(warnings);
  const rec::BargainingSolution sol = rec::solve_bargaining(s);
  const auto fields = solution_fields(sol);
  std::ostringstream os;
  if (format == "json") {
    ordered_json j;
    for (const auto& [k, v] : fields) j[k] = v;
    if (sol.tied_beta) j["tied_beta"] = fmt(*sol.tied_beta);
    os << j.dump(2) << "\n";
  } else {
    os << "key,value\n";
    for (const auto& [k, v] : fields) os << k << "," << v << "\n";
    if (sol.tied_beta) os << "tied_beta," << fmt(*sol.tied_beta) << "\n";
  }
  write_output(os.str(), out_path);
  return kExitOk;
}

/// Resolves a parameter path like "gas_price.initial_value" or "c_b" to a
/// mutable field of the scenario.
double* resolve_param(rec::MarketScenario& s, const std::string& path) {
  const std::map<std::string, double*> scalars = {
      {"r", &s.r},           {"lambda", &s.lambda},   {"Z", &s.Z},
      {"c_h", &s.c_h},       {"c_b", &s.c_b},         {"theta_h", &s.theta_h},
      {"theta_b", &s.theta_b}, {"K_g", &s.K_g},       {"b", &s.b},
      {"rho_c", &s.rho_c}};
  std::string key = path;
  if (key.rfind("market.", 0) == 0) key = key.substr(7);
  if (auto it = scalars.find(key); it != scalars.end()) return it->second;
  const std::map<std::string, rec::GbmSpec*> specs = {
      {"spot_price", &s.spot_price},
      {"purchase_price", &s.purchase_price},
      {"gas_price", &s.gas_price},
      {"demand", &s.demand}};
  const std::size_t dot = key.find('.');
  if (dot != std::string::npos) {
    if (auto it = specs.find(key.substr(0, dot)); it != specs.end()) {
      const std::string field = key.substr(dot + 1);
      if (field == "initial_value") return &it->second->initial_value;
      if (field == "drift") return &it->second->drift;
      if (field == "volatility") return &it->second->volatility;
    }
  }
  throw rec::ValidationError(path, "unknown parameter path");
}

std::string svg_chart(const std::string& param,
                      const std::vector<double>& xs,
                      const std::vector<std::optional<double>>& beta,
                      const std::vector<std::optional<double>>& yb) {
  const int width = 640, height = 400, margin = 50;
  double xmin = xs.front(), xmax = xs.front();
  for (double x : xs) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  auto px = [&](double x) {
    return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin);
  };
  auto make_line = [&](const std::vector<std::optional<double>>& ys,
                       const char* color) {
    double lo = 0.0, hi = 1.0;
    bool first = true;
    for (const auto& y : ys)
      if (y) {
        if (first) {
          lo = hi = *y;
          first = false;
        } else {
          lo = std::min(lo, *y);
          hi = std::max(hi, *y);
        }
      }
    if (hi == lo) hi = lo + 1.0;
    std::ostringstream pts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!ys[i]) continue;
      const double py =
          height - margin - (*ys[i] - lo) / (hi - lo) * (height - 2 * margin);
      pts << fmt(px(xs[i])) << "," << fmt(py) << " ";
    }
    std::ostringstream l;
    l << "  <polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"2\" points=\"" << pts.str() << "\"/>\n";
    return l.str();
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "  <text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\">"
      << param << " sweep: beta_star (blue), y_b (green)</text>\n"
      << make_line(beta, "#1f4e9c") << make_line(yb, "#2e8b57") << "</svg>\n";
  return svg.str();
}

int cmd_sweep(const std::string& scenario_path, const std::string& out_path,
              const std::string& format, const std::string& param,
              const std::vector<double>& values, const std::string& svg_path) {
  if (values.empty())
    throw rec::ValidationError("--values", "sweep grid must be non-empty");
  std::vector<std::string> warnings;
  const rec::MarketScenario base = rec::load_scenario(scenario_path, &warnings);
  print_warnings(warnings);
  {
    rec::MarketScenario probe = base;
    resolve_param(probe, param);  // fail fast on a bad path
  }

  std::vector<std::optional<double>> betas, ybs;
  ordered_json jrows = ordered_json::array();
  std::ostringstream os;
  os << param
     << ",beta_star,y_h,y_b,case,j_h,j_b,d_h,d_b,nash_product,"
        "community_formed,error\n";
  for (double v : values) {
    rec::MarketScenario s = base;
    *resolve_param(s, param) = v;
    std::string error;
    std::optional<rec::BargainingSolution> sol;
    try {
      sol = rec::solve_bargaining(s);
    } catch (const std::exception& e) {
      error = e.what();
      for (char& ch : error)
        if (ch == ',' || ch == '\n') ch = ';';
    }
    if (sol) {
      betas.push_back(sol->beta_star);
      ybs.push_back(sol->outcome.installs.y_b);
      os << fmt(v);
      for (const auto& [k, val] : solution_fields(*sol)) os << "," << val;
      os << ",\n";
      ordered_json j;
      j[param] = fmt(v);
      for (const auto& [k, val] : solution_fields(*sol)) j[k] = val;
      jrows.push_back(j);
    } else {
      betas.emplace_back();
      ybs.emplace_back();
      os << fmt(v) << ",,,,,,,,,,," << error << "\n";
      ordered_json j;
      j[param] = fmt(v);
      j["error"] = error;
      jrows.push_back(j);
    }
  }
  if (format == "json") {
    write_output(ordered_json(jrows).dump(2) + "\n", out_path);
  } else {
    write_output(os.str(), out_path);
  }
  if (!svg_path.empty()) {
    std::ofstream svg(svg_path, std::ios::binary);
    if (!svg) throw rec::ValidationError(svg_path, "cannot open SVG output");
    svg << svg_chart(param, values, betas, ybs);
  }
  return kExitOk;
}

int cmd_calibrate(const std::string& csv_path, const std::string& out_path,
                  const std::string& name,
                  const std::vector<double>& frequencies) {
  std::vector<std::string> warnings;
  const rec::HourlySeries series = rec::load_hourly_csv(csv_path, &warnings);
  print_warnings(warnings);
  const rec::CalibrationResult res =
      frequencies.empty() ? rec::estimate_gbm(series)
                          : rec::calibrate(series, frequencies);
  const rec::GbmSpec spec = rec::to_gbm_spec(res, /*martingale=*/true);

  std::ostringstream os;
  os << "# calibration of '" << name << "' from " << csv_path << " ("
     << series.size() << " hourly points)\n";
  os << "# raw drift mu_hat = " << fmt(res.mu_hat) << " 1/h, 95% CI ["
     << fmt(res.mu_ci_low) << ", " << fmt(res.mu_ci_high) << "]\n";
  os << "# sigma_hat = " << fmt(res.sigma_hat) << " 1/sqrt(h)"
     << (res.degenerate ? " (degenerate: no measurable variation)" : "")
     << "\n";
  for (const auto& c : res.seasonal_components)
    os << "# seasonal: frequency = " << fmt(c.frequency)
       << " 1/h, amplitude = " << fmt(c.amplitude)
       << ", phase = " << fmt(c.phase) << " rad\n";
  os << "[" << name << "]\n";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", spec.initial_value);
  os << "initial_value = " << buf << "\n";
  std::snprintf(buf, sizeof(buf), "%.17g", spec.drift);
  os << "drift = " << buf << "  # martingale-adjusted (-sigma^2/2)\n";
  std::snprintf(buf, sizeof(buf), "%.17g", spec.volatility);
  os << "volatility = " << buf << "\n";
  write_output(os.str(), out_path);
  return kExitOk;
}

int cmd_validate(const std::string& scenario_path, const std::string& out_path,
                 std::int64_t paths, std::uint64_t seed, double step,
                 double horizon, double perturb_b1) {
  std::vector<std::string> warnings;
  const rec::MarketScenario s = rec::load_scenario(scenario_path, &warnings);
  print_warnings(warnings);
  const rec::NetRates rates = rec::compute_net_rates(s);
  rec::IncentiveCoefficients c = rec::coefficients(s, rates);
  c.B1 *= 1.0 + perturb_b1;  // negative-control hook, 0 by default

  rec::McConfig cfg;
  cfg.paths = paths;
  cfg.seed = seed;
  cfg.step = step;
  cfg.horizon =
      horizon > 0.0 ? horizon : rec::suggested_horizon(s, rates, step);

  const rec::InstallationPair y{s.theta_h, s.theta_b};
  const double d = s.demand.initial_value;
  bool all_pass = true;
  std::ostringstream os;
  auto check = [&](const std::string& name, double closed,
                   const rec::McEstimate& mc) {
    const double z = mc.standard_error > 0.0
                         ? (mc.mean - closed) / mc.standard_error
                         : (mc.mean == closed ? 0.0 : 1e30);
    const bool pass = std::abs(z) <= 3.0;
    all_pass = all_pass && pass;
    os << name << ": closed_form=" << fmt(closed) << " mc=" << fmt(mc.mean)
       << " se=" << fmt(mc.standard_error) << " z=" << fmt(z) << " "
       << (pass ? "PASS" : "FAIL") << "\n";
  };

  const double w_closed = rec::w(c, s, rates, y.y_h, y.y_b, d);
  check("w_killed", w_closed, rec::simulate_w_killed(s, y, cfg));
  check("w_tau", w_closed, rec::simulate_w_tau(s, y, cfg));

  // The payoff integrands carry the price processes themselves; their Monte
  // Carlo variance is finite only when each net rate exceeds half the
  // corresponding squared volatility.
  const bool finite_var =
      rates.r_v > s.spot_price.volatility * s.spot_price.volatility / 2.0 &&
      rates.r_p > s.gas_price.volatility * s.gas_price.volatility / 2.0 &&
      rates.r_cd > (s.purchase_price.volatility * s.purchase_price.volatility +
                    s.demand.volatility * s.demand.volatility) /
                       2.0;
  if (finite_var) {
    const rec::UnitGains g = rec::unit_gains(s, rates);
    const double beta = 0.5;
    check("j_h", rec::j_h(s, rates, g, c, y, beta),
          rec::simulate_payoff(s, y, beta, cfg, rec::McMember::household));
    check("j_b", rec::j_b(s, rates, g, c, y, beta),
          rec::simulate_payoff(s, y, beta, cfg, rec::McMember::biogas));
  } else {
    os << "j_h: SKIPPED (payoff variance is infinite at these volatilities; "
          "the incentive-value oracles above remain binding)\n"
       << "j_b: SKIPPED (payoff variance is infinite at these volatilities)\n";
  }

  os << (all_pass ? "PASS" : "FAIL") << "\n";
  write_output(os.str(), out_path);
  return all_pass ? kExitOk : kExitValidateFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-member renewable-energy-community Stackelberg solver"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, format = "csv";
  std::uint64_t seed = 0;
  std::int64_t paths = 20000;

  auto add_common = [&](CLI::App* cmd, bool needs_scenario) {
    if (needs_scenario)
      cmd->add_option("--scenario", scenario_path, "scenario file")
          ->required();
    cmd->add_option("--out", out_path, "output file (default: stdout)");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the full game");
  add_common(solve, true);

  CLI::App* sweep = app.add_subcommand("sweep", "one-parameter sensitivity");
  add_common(sweep, true);
  std::string param, svg_path;
  std::vector<double> values;
  sweep->add_option("--param", param, "parameter path, e.g. gas_price.initial_value")
      ->required();
  sweep->add_option("--values", values, "grid values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--svg", svg_path, "also write an SVG line chart");

  CLI::App* calibrate = app.add_subcommand("calibrate", "GBM from hourly CSV");
  add_common(calibrate, false);
  std::string csv_path, series_name = "demand";
  std::vector<double> frequencies;
  calibrate->add_option("--csv", csv_path, "hourly timestamp,value CSV")
      ->required();
  calibrate->add_option("--name", series_name, "scenario section to emit");
  calibrate
      ->add_option("--frequencies", frequencies,
                   "seasonal frequencies, cycles per hour")
      ->delimiter(',');

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Monte Carlo vs closed forms");
  add_common(validate_cmd, true);
  double step = 48.0, horizon = 0.0, perturb_b1 = 0.0;
  validate_cmd->add_option("--paths", paths, "Monte Carlo paths");
  validate_cmd->add_option("--seed", seed, "Monte Carlo seed");
  validate_cmd->add_option("--step", step, "time step, hours");
  validate_cmd->add_option("--horizon", horizon,
                           "truncation horizon, hours (default: auto)");
  validate_cmd
      ->add_option("--perturb-b1", perturb_b1,
                   "relative perturbation of B1 (negative control)")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (solve->parsed()) return cmd_solve(scenario_path, out_path, format);
    if (sweep->parsed())
      return cmd_sweep(scenario_path, out_path, format, param, values,
                       svg_path);
    if (calibrate->parsed())
      return cmd_calibrate(csv_path, out_path, series_name, frequencies);
    return cmd_validate(scenario_path, out_path, paths, seed, step, horizon,
                        perturb_b1);
  } catch (const rec::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const rec::CalibrationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const rec::AssumptionViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const rec::TruncationTooShort& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const rec::ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverError;
  }
}
