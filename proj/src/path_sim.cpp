#include "smallball/path_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "smallball/pow_util.hpp"

namespace smallball {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// |z| = eta * U^{-1/alpha}: inverse CDF of the normalized tail
// P[|z| > x] = (eta/x)^alpha, x >= eta.
inline double tail_size(double eta, double alpha, double u) {
  if (alpha == 1.0) return eta / u;
  if (alpha == 0.5) return eta / (u * u);
  return eta * std::pow(u, -1.0 / alpha);
}

}  // namespace

PathGrid simulate_grid(const StableLaw& law, std::size_t n, RngStream& g) {
  require(n >= 1, "simulate_grid: n must be >= 1");
  PathGrid path;
  path.n = n;
  path.method = "grid";
  path.seed = g.seed();
  path.stream = g.stream();
  path.values.resize(n + 1);
  path.values[0] = 0.0;
  const double dt = 1.0 / static_cast<double>(n);
  double scale;
  if (law.alpha == 2.0)
    scale = std::sqrt(dt);
  else if (law.alpha == 1.0)
    scale = dt;
  else
    scale = std::pow(dt, 1.0 / law.alpha);
  double v = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    v += scale * sample_stable(law, 1.0, g);
    path.values[k] = v;
  }
  return path;
}

JumpSet simulate_jumps(const StableLaw& law, double eta, RngStream& g) {
  require(law.alpha < 2.0, "simulate_jumps: alpha = 2 has no jump part");
  require(eta > 0.0, "simulate_jumps: eta must be positive");
  const double eta_alpha = std::pow(eta, law.alpha);
  const double rate_plus = law.c_plus / (law.alpha * eta_alpha);
  const double rate_minus = law.c_minus / (law.alpha * eta_alpha);
  const std::uint64_t n_plus = rate_plus > 0.0 ? g.poisson(rate_plus) : 0;
  const std::uint64_t n_minus = rate_minus > 0.0 ? g.poisson(rate_minus) : 0;
  JumpSet js;
  js.eta = eta;
  js.jumps.reserve(n_plus + n_minus);
  for (std::uint64_t i = 0; i < n_plus; ++i)
    js.jumps.push_back({0.0, tail_size(eta, law.alpha, g.uniform_pos())});
  for (std::uint64_t i = 0; i < n_minus; ++i)
    js.jumps.push_back({0.0, -tail_size(eta, law.alpha, g.uniform_pos())});
  for (auto& j : js.jumps) j.time = g.uniform();
  std::sort(js.jumps.begin(), js.jumps.end(),
            [](const Jump& a, const Jump& b) { return a.time < b.time; });
  return js;
}

double sp_from_jumps(const JumpSet& jumps, double p) {
  require(p > 0.0, "sp_from_jumps: p must be positive");
  KahanSum s;
  for (const auto& j : jumps.jumps) s.add(pow_abs(j.size, p));
  return s.value();
}

double sample_sp_eta(const StableLaw& law, double eta, double p, RngStream& g,
                     double stop_above) {
  require(law.alpha < 2.0, "sample_sp_eta: alpha = 2 has no jump part");
  require(eta > 0.0, "sample_sp_eta: eta must be positive");
  require(p > 0.0, "sample_sp_eta: p must be positive");
  const double eta_alpha = std::pow(eta, law.alpha);
  KahanSum s;
  for (double c : {law.c_plus, law.c_minus}) {
    if (c <= 0.0) continue;
    const std::uint64_t count = g.poisson(c / (law.alpha * eta_alpha));
    for (std::uint64_t i = 0; i < count; ++i) {
      s.add(pow_abs(tail_size(eta, law.alpha, g.uniform_pos()), p));
      if (s.value() > stop_above) return s.value();
    }
  }
  return s.value();
}

PathGrid step_path_from_jumps(const JumpSet& jumps, std::size_t n) {
  require(n >= 1, "step_path_from_jumps: n must be >= 1");
  PathGrid path;
  path.n = n;
  path.method = "jumps";
  path.values.resize(n + 1);
  std::size_t j = 0;
  double v = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n);
    while (j < jumps.jumps.size() && jumps.jumps[j].time <= t) {
      v += jumps.jumps[j].size;
      ++j;
    }
    path.values[k] = v;
  }
  return path;
}

SubordinatedPath simulate_subordinated(double alpha, double kappa, std::size_t n,
                                       RngStream& g) {
  require(alpha > 0.0 && alpha < 2.0, "simulate_subordinated: alpha must lie in (0,2)");
  require(kappa > 0.0, "simulate_subordinated: kappa must be positive");
  require(n >= 1, "simulate_subordinated: n must be >= 1");
  SubordinatedPath sp;
  sp.n = n;

  // sigma: (alpha/2)-stable subordinator with E exp(-l sigma_t) = exp(-kappa 2^{alpha/2} t l^{alpha/2}),
  // so that W(sigma_1) has the symmetric Fourier constant kappa.
  const SubordinatorLaw sub{alpha / 2.0, kappa * std::pow(2.0, alpha / 2.0)};
  const double inc_scale = std::pow(1.0 / static_cast<double>(n), 2.0 / alpha);
  sp.sub_values.resize(n + 1);
  sp.sub_values[0] = 0.0;
  double s = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    s += inc_scale * sample_one_sided(sub, g);
    sp.sub_values[k] = s;
  }
  const double sigma1 = s;

  // W on the refined uniform grid of [0, sigma1].
  const std::size_t m = 4 * n;
  const double h = sigma1 / static_cast<double>(m);
  std::vector<double> wg(m + 1);
  wg[0] = 0.0;
  const double sdt = std::sqrt(h);
  double w = 0.0;
  for (std::size_t j = 1; j <= m; ++j) {
    w += sdt * g.gaussian();
    wg[j] = w;
  }

  // Bridge-interpolate W at the exact query times sigma(k/n), conditioning on
  // everything already sampled (previous bridge point in the same cell, or the
  // cell's left grid point) and the cell's right grid point.
  sp.composed.resize(n + 1);
  sp.composed[0] = 0.0;
  std::vector<double> bridge_t, bridge_w;
  bridge_t.reserve(n);
  bridge_w.reserve(n);
  double anchor_t = 0.0, anchor_w = 0.0;
  std::size_t anchor_cell = static_cast<std::size_t>(-1);
  for (std::size_t k = 1; k <= n; ++k) {
    const double tau = sp.sub_values[k];
    std::size_t cell = (h > 0.0) ? static_cast<std::size_t>(tau / h) : 0;
    if (cell >= m) cell = m - 1;
    const double t_hi = (cell + 1 == m) ? sigma1 : (static_cast<double>(cell + 1) * h);
    if (tau >= t_hi) {  // query falls on (or microscopically past) a grid node
      sp.composed[k] = wg[cell + 1];
      continue;
    }
    if (cell != anchor_cell) {
      anchor_cell = cell;
      anchor_t = static_cast<double>(cell) * h;
      anchor_w = wg[cell];
    }
    const double span = t_hi - anchor_t;
    double val;
    if (span <= 0.0 || tau <= anchor_t) {
      val = anchor_w;
    } else {
      const double frac = (tau - anchor_t) / span;
      const double mean = anchor_w + frac * (wg[cell + 1] - anchor_w);
      const double var = (tau - anchor_t) * (t_hi - tau) / span;
      val = mean + std::sqrt(std::max(0.0, var)) * g.gaussian();
    }
    sp.composed[k] = val;
    bridge_t.push_back(tau);
    bridge_w.push_back(val);
    anchor_t = tau;
    anchor_w = val;
  }

  // Merge the refined grid with the bridge samples (both time-sorted).
  sp.w_times.reserve(m + 1 + bridge_t.size());
  sp.w_values.reserve(m + 1 + bridge_t.size());
  std::size_t gi = 0, bi = 0;
  while (gi <= m || bi < bridge_t.size()) {
    const double tg = (gi <= m) ? ((gi == m) ? sigma1 : static_cast<double>(gi) * h)
                                : std::numeric_limits<double>::infinity();
    const double tb =
        (bi < bridge_t.size()) ? bridge_t[bi] : std::numeric_limits<double>::infinity();
    if (tg <= tb) {
      sp.w_times.push_back(tg);
      sp.w_values.push_back(wg[gi]);
      ++gi;
    } else {
      sp.w_times.push_back(tb);
      sp.w_values.push_back(bridge_w[bi]);
      ++bi;
    }
  }
  return sp;
}

void add_drift(PathGrid& path, double b) {
  const double n = static_cast<double>(path.n);
  for (std::size_t k = 0; k < path.values.size(); ++k)
    path.values[k] += b * static_cast<double>(k) / n;
}

}  // namespace smallball
