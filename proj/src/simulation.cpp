#include "rec/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace rec {

namespace {

constexpr std::int64_t kBatchSize = 4096;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Streaming mean/variance with order-stable pairwise merging, so batched
/// runs reproduce single-pass results bit-for-bit for a fixed batch size.
struct Accumulator {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const Accumulator& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double delta = o.mean - mean;
    const double total = static_cast<double>(n + o.n);
    mean += delta * static_cast<double>(o.n) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(n) *
                     static_cast<double>(o.n) / total;
    n += o.n;
  }
};

McEstimate to_estimate(const Accumulator& a) {
  McEstimate e;
  e.mean = a.mean;
  e.paths_used = a.n;
  const double var = a.n > 1 ? a.m2 / static_cast<double>(a.n - 1) : 0.0;
  e.standard_error = std::sqrt(var / static_cast<double>(a.n));
  return e;
}

/// Runs `paths` independent path simulations in deterministic batches, each
/// batch with its own seed derived from cfg.seed and the batch index.
template <typename PathFn>
McEstimate run_paths(const McConfig& cfg, PathFn&& path_fn) {
  Accumulator total;
  const std::int64_t batches = (cfg.paths + kBatchSize - 1) / kBatchSize;
  for (std::int64_t b = 0; b < batches; ++b) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(b) + 1)));
    Accumulator batch;
    const std::int64_t count = std::min(kBatchSize, cfg.paths - b * kBatchSize);
    for (std::int64_t i = 0; i < count; ++i) batch.add(path_fn(rng));
    total.merge(batch);
  }
  return to_estimate(total);
}

std::int64_t step_count(const McConfig& cfg) {
  return static_cast<std::int64_t>(std::llround(cfg.horizon / cfg.step));
}

/// Trapezoidal quadrature weights step * e^{-rate s_k}, halved at the ends.
std::vector<double> discount_weights(double rate, double step, std::int64_t n) {
  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    const double f = (k == 0 || k == n) ? 0.5 : 1.0;
    w[static_cast<std::size_t>(k)] =
        f * step * std::exp(-rate * static_cast<double>(k) * step);
  }
  return w;
}

void check_truncation(double tail, const McEstimate& e) {
  if (tail > 1e-3 * std::abs(e.mean))
    throw TruncationTooShort(
        "Monte Carlo horizon too short: discounted tail bound exceeds 0.1% "
        "of the estimate");
}

}  // namespace

void McConfig::validate() const {
  if (paths < 2)
    throw ValidationError("mc.paths", "at least 2 paths are required");
  if (!(step > 0.0)) throw ValidationError("mc.step", "must be positive");
  if (!(horizon > 0.0)) throw ValidationError("mc.horizon", "must be positive");
  const double n = std::round(horizon / step);
  if (n < 1.0 || std::abs(n * step - horizon) > 1e-9 * horizon)
    throw ValidationError("mc.horizon", "must be a positive multiple of step");
}

double suggested_horizon(const MarketScenario& s, const NetRates& rates,
                         double step) {
  const double rate = std::min(std::min(s.r + s.lambda, rates.r_v),
                               std::min(rates.r_p, rates.r_cd));
  const double t = std::log(1e4) / rate;
  return std::ceil(t / step) * step;
}

McEstimate simulate_w_killed(const MarketScenario& s, const InstallationPair& y,
                             const McConfig& cfg) {
  cfg.validate();
  const double cap = y.aggregate();
  const std::int64_t n = step_count(cfg);
  const double rl = s.r + s.lambda;
  const std::vector<double> wt = discount_weights(rl, cfg.step, n);
  const double mu_dt = s.demand.drift * cfg.step;
  const double sg_dt = s.demand.volatility * std::sqrt(cfg.step);
  const double log_d0 = std::log(s.demand.initial_value);

  McEstimate e = run_paths(cfg, [&](std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    double logd = log_d0;
    double acc = wt[0] * std::min(s.demand.initial_value, cap);
    for (std::int64_t k = 1; k <= n; ++k) {
      logd += mu_dt + sg_dt * nd(rng);
      acc += wt[static_cast<std::size_t>(k)] * std::min(std::exp(logd), cap);
    }
    return acc;
  });
  check_truncation(std::exp(-rl * cfg.horizon) * cap / rl, e);
  return e;
}

McEstimate simulate_w_tau(const MarketScenario& s, const InstallationPair& y,
                          const McConfig& cfg) {
  cfg.validate();
  const double cap = y.aggregate();
  const std::int64_t n = step_count(cfg);
  const double rl = s.r + s.lambda;
  const double mu_dt = s.demand.drift * cfg.step;
  const double sg_dt = s.demand.volatility * std::sqrt(cfg.step);
  const double log_d0 = std::log(s.demand.initial_value);

  McEstimate e = run_paths(cfg, [&](std::mt19937_64& rng) {
    std::exponential_distribution<double> expiry(s.lambda);
    std::normal_distribution<double> nd;
    const double t_end = std::min(expiry(rng), cfg.horizon);
    const auto full = static_cast<std::int64_t>(std::floor(t_end / cfg.step));
    const std::int64_t grid = std::min(full, n);
    double logd = log_d0;
    double prev = std::min(s.demand.initial_value, cap);  // f(s_0), discount 1
    double acc = 0.0;
    for (std::int64_t k = 1; k <= grid; ++k) {
      logd += mu_dt + sg_dt * nd(rng);
      const double cur = std::exp(-s.r * static_cast<double>(k) * cfg.step) *
                         std::min(std::exp(logd), cap);
      acc += 0.5 * cfg.step * (prev + cur);
      prev = cur;
    }
    // Partial last interval: one exact transition to t_end.
    const double rem = t_end - static_cast<double>(grid) * cfg.step;
    if (rem > 0.0) {
      logd += s.demand.drift * rem +
              s.demand.volatility * std::sqrt(rem) * nd(rng);
      const double cur = std::exp(-s.r * t_end) * std::min(std::exp(logd), cap);
      acc += 0.5 * rem * (prev + cur);
    }
    return acc;
  });
  check_truncation(std::exp(-rl * cfg.horizon) * cap / rl, e);
  return e;
}

McEstimate simulate_payoff(const MarketScenario& s, const InstallationPair& y,
                           double beta, const McConfig& cfg, McMember member) {
  cfg.validate();
  const double cap = y.aggregate();
  const std::int64_t n = step_count(cfg);
  const double rl = s.r + s.lambda;
  const std::vector<double> wr = discount_weights(s.r, cfg.step, n);
  const std::vector<double> wrl = discount_weights(rl, cfg.step, n);
  const double sqdt = std::sqrt(cfg.step);
  const double rho = s.rho_c;
  const double rho_orth = std::sqrt(1.0 - rho * rho);
  const bool household = member == McMember::household;
  const double share = household ? beta : 1.0 - beta;
  const double gas_cap = s.b * s.K_g;

  McEstimate e = run_paths(cfg, [&](std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    double log_v = std::log(s.spot_price.initial_value);
    double log_p = std::log(s.gas_price.initial_value);
    double log_c = std::log(s.purchase_price.initial_value);
    double log_d = std::log(s.demand.initial_value);
    double acc = 0.0;
    for (std::int64_t k = 0; k <= n; ++k) {
      if (k > 0) {
        const double xi_d = nd(rng);
        const double xi_c = rho * xi_d + rho_orth * nd(rng);
        log_v += s.spot_price.drift * cfg.step +
                 s.spot_price.volatility * sqdt * nd(rng);
        log_p += s.gas_price.drift * cfg.step +
                 s.gas_price.volatility * sqdt * nd(rng);
        log_c += s.purchase_price.drift * cfg.step +
                 s.purchase_price.volatility * sqdt * xi_c;
        log_d += s.demand.drift * cfg.step + s.demand.volatility * sqdt * xi_d;
      }
      const double xv = std::exp(log_v);
      const double d = std::exp(log_d);
      double flow;
      if (household)
        flow = xv * y.y_h - std::exp(log_c) * d;
      else
        flow = xv * y.y_b + std::exp(log_p) * (gas_cap - y.y_b);
      acc += wr[static_cast<std::size_t>(k)] * flow +
             wrl[static_cast<std::size_t>(k)] * share * s.Z * std::min(d, cap);
    }
    return acc - (household ? s.c_h * y.y_h : s.c_b * y.y_b);
  });

  const NetRates rates = compute_net_rates(s);
  double tail = share * s.Z * std::exp(-rl * cfg.horizon) * cap / rl;
  if (household) {
    tail += s.spot_price.initial_value * y.y_h *
                std::exp(-rates.r_v * cfg.horizon) / rates.r_v +
            s.purchase_price.initial_value * s.demand.initial_value *
                std::exp(-rates.r_cd * cfg.horizon) / rates.r_cd;
  } else {
    tail += s.spot_price.initial_value * y.y_b *
                std::exp(-rates.r_v * cfg.horizon) / rates.r_v +
            s.gas_price.initial_value * gas_cap *
                std::exp(-rates.r_p * cfg.horizon) / rates.r_p;
  }
  check_truncation(tail, e);
  return e;
}

}  // namespace rec
