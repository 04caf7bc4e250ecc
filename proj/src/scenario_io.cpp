#include "rec/scenario_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rec {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

const std::set<std::string> kSections = {"market", "spot_price",
                                         "purchase_price", "gas_price",
                                         "demand"};
const std::set<std::string> kProcessKeys = {"initial_value", "drift",
                                            "volatility"};
const std::set<std::string> kMarketKeys = {
    "r", "r_annual", "lambda", "Z",       "c_h", "c_b",
    "theta_h", "theta_b", "K_g", "b", "rho_c"};
const std::set<std::string> kIgnoredKeys = {"rho_v", "rho_p"};

double parse_number(const std::string& field, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    while (used < text.size() &&
           std::isspace(static_cast<unsigned char>(text[used])))
      ++used;
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(field, "not a number: '" + text + "'");
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

MarketScenario load_scenario(const std::string& path,
                             std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path, "cannot open scenario file");

  std::map<std::string, double> kv;  // "section.key" -> value
  std::string section;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ValidationError(where, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!kSections.count(section))
        throw ValidationError(where, "unknown section [" + section + "]");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError(where, "expected 'key = value'");
    if (section.empty())
      throw ValidationError(where, "key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const bool market = section == "market";
    if (market && kIgnoredKeys.count(key)) {
      if (warnings)
        warnings->push_back(where + ": correlation '" + key +
                            "' has no effect on the model and is ignored");
      continue;
    }
    if (!(market ? kMarketKeys.count(key) : kProcessKeys.count(key)))
      throw ValidationError(where,
                            "unknown key '" + key + "' in [" + section + "]");
    const std::string full = section + "." + key;
    if (kv.count(full)) throw ValidationError(where, "duplicate key " + full);
    kv[full] = parse_number(full, value);
  }

  auto take = [&](const std::string& full) {
    const auto it = kv.find(full);
    if (it == kv.end()) throw ValidationError(full, "missing required key");
    const double v = it->second;
    kv.erase(it);
    return v;
  };

  MarketScenario s;
  const std::pair<GbmSpec*, const char*> blocks[] = {
      {&s.spot_price, "spot_price"},
      {&s.purchase_price, "purchase_price"},
      {&s.gas_price, "gas_price"},
      {&s.demand, "demand"}};
  for (const auto& [spec, name] : blocks) {
    spec->initial_value = take(std::string(name) + ".initial_value");
    spec->drift = take(std::string(name) + ".drift");
    spec->volatility = take(std::string(name) + ".volatility");
  }
  if (kv.count("market.r_annual")) {
    if (kv.count("market.r"))
      throw ValidationError("market.r", "give either r or r_annual, not both");
    s.r = take("market.r_annual") / kHoursPerYear;
  } else {
    s.r = take("market.r");
  }
  s.lambda = take("market.lambda");
  s.Z = take("market.Z");
  s.c_h = take("market.c_h");
  s.c_b = take("market.c_b");
  s.theta_h = take("market.theta_h");
  s.theta_b = take("market.theta_b");
  s.K_g = take("market.K_g");
  s.b = take("market.b");
  s.rho_c = take("market.rho_c");

  validate(s);
  return s;
}

void save_scenario(const MarketScenario& s, std::ostream& out) {
  out << "# Two-member energy-community scenario. Time unit: hours.\n";
  out << "[market]\n";
  out << "r = " << fmt(s.r) << "          # discount rate, 1/h\n";
  out << "lambda = " << fmt(s.lambda) << "  # incentive expiry intensity, 1/h\n";
  out << "Z = " << fmt(s.Z) << "        # self-consumption incentive, EUR/MWh\n";
  out << "c_h = " << fmt(s.c_h) << "    # PV installation cost, EUR/MW\n";
  out << "c_b = " << fmt(s.c_b) << "    # turbine installation cost, EUR/MW\n";
  out << "theta_h = " << fmt(s.theta_h) << "  # household cap, MW\n";
  out << "theta_b = " << fmt(s.theta_b) << "  # biogas cap, MW\n";
  out << "K_g = " << fmt(s.K_g) << "    # gas production capacity, m^3\n";
  out << "b = " << fmt(s.b) << "        # conversion factor, MW/m^3\n";
  out << "rho_c = " << fmt(s.rho_c) << "  # Corr(demand, purchase price)\n";
  const struct {
    const char* name;
    const GbmSpec* spec;
  } blocks[] = {{"spot_price", &s.spot_price},
                {"purchase_price", &s.purchase_price},
                {"gas_price", &s.gas_price},
                {"demand", &s.demand}};
  for (const auto& blk : blocks) {
    out << "\n[" << blk.name << "]\n";
    out << "initial_value = " << fmt(blk.spec->initial_value) << "\n";
    out << "drift = " << fmt(blk.spec->drift) << "\n";
    out << "volatility = " << fmt(blk.spec->volatility) << "\n";
  }
}

void save_scenario(const MarketScenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError(path, "cannot open file for writing");
  save_scenario(s, out);
}

}  // namespace rec
