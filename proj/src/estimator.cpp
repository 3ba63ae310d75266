#include "smallball/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <thread>

#include "smallball/constants.hpp"
#include "smallball/errors.hpp"
#include "smallball/path_sim.hpp"
#include "smallball/pow_util.hpp"
#include "smallball/variation.hpp"

namespace smallball {

namespace {

// Replicate r of phase ph owns the Philox stream (ph << 48) | r: phases keep
// pilot, main, sensitivity and auxiliary arms on disjoint streams, so every
// value depends only on (master_seed, phase, replicate) and never on
// scheduling.
std::uint64_t stream_id(std::uint64_t phase, std::uint64_t replicate) {
  return (phase << 48) | replicate;
}

constexpr std::uint64_t kPhaseMain = 0;
constexpr std::uint64_t kPhasePilot = 1;
constexpr std::uint64_t kPhaseSensitivity = 2;
constexpr std::uint64_t kPhaseArmA = 3;
constexpr std::uint64_t kPhaseArmB = 4;

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Streamed grid-path semi-norm with a monotone abort: every supported
// semi-norm dominates (a function of) the running oscillation, so once the
// partial value certainly exceeds `thr` the replicate is a miss for every
// epsilon <= thr and simulation stops. Returns a value > thr in that case.
double grid_seminorm_value(const StableLaw& law, Seminorm sn, double p, std::size_t n,
                           double thr, RngStream& g, std::vector<double>& buf) {
  const double dt = 1.0 / static_cast<double>(n);
  const bool store = (sn == Seminorm::pvar || sn == Seminorm::holder);
  if (store) {
    buf.clear();
    buf.reserve(n + 1);
    buf.push_back(0.0);
  }
  double x = 0.0;
  double vmin = 0.0, vmax = 0.0;
  double sumsq = 0.0;  // left endpoints, l2 only
  const double l2_abort = thr * thr * static_cast<double>(n);
  for (std::size_t k = 1; k <= n; ++k) {
    if (sn == Seminorm::l2) {
      sumsq += x * x;
      if (sumsq > l2_abort) return std::sqrt(sumsq / static_cast<double>(n));
    }
    x += sample_stable(law, dt, g);
    if (store) buf.push_back(x);
    vmin = std::min(vmin, x);
    vmax = std::max(vmax, x);
    switch (sn) {
      case Seminorm::sup:
        if (std::max(vmax, -vmin) > thr) return std::max(vmax, -vmin);
        break;
      case Seminorm::oscillation:
      case Seminorm::pvar:
      case Seminorm::holder:
        // pvar root and the Hoelder semi-norm both dominate the oscillation.
        if (vmax - vmin > thr) return vmax - vmin;
        break;
      case Seminorm::l2:
        break;
    }
  }
  switch (sn) {
    case Seminorm::sup:
      return std::max(vmax, -vmin);
    case Seminorm::oscillation:
      return vmax - vmin;
    case Seminorm::l2:
      return std::sqrt(sumsq / static_cast<double>(n));
    case Seminorm::pvar:
      return pvar_dp(buf, p).root;
    case Seminorm::holder:
      return holder_seminorm(buf, p, n);
  }
  return 0.0;
}

struct RouteSpec {
  Route route;
  double gamma;
};

RouteSpec resolve_route(const StableLaw& law, Seminorm sn, double p) {
  const double a = law.alpha;
  switch (sn) {
    case Seminorm::pvar:
      if (p <= 1.0) {
        if (!(a < p))
          throw std::invalid_argument(
              "estimate_smallball: p-variation with p <= 1 needs alpha < p (jump route)");
        return {Route::jumps, gamma_exponent(a, p, false)};
      }
      if (law.is_subordinator_abs())
        return {Route::subordinator_endpoint, gamma_exponent(a, p, true)};
      return {Route::grid, gamma_exponent(a, p, false)};
    case Seminorm::holder:
      if (a != 2.0 || !(p > 2.0))
        throw std::invalid_argument(
            "estimate_smallball: holder semi-norm is available for alpha = 2, p > 2");
      return {Route::grid, gamma_exponent(a, p, false)};
    case Seminorm::sup:
    case Seminorm::oscillation:
    case Seminorm::l2:
      return {Route::grid, a};
  }
  throw std::invalid_argument("estimate_smallball: unknown semi-norm");
}

// One semi-norm draw for the resolved route.
double route_value(const StableLaw& law, Seminorm sn, double p, Route route, std::size_t grid_n,
                   double eta, double thr, RngStream& g) {
  switch (route) {
    case Route::grid: {
      thread_local std::vector<double> buf;
      return grid_seminorm_value(law, sn, p, grid_n, thr, g, buf);
    }
    case Route::jumps:
      return std::pow(sample_sp_eta(law, eta, p, g, pow_abs(thr, p)), 1.0 / p);
    case Route::subordinator_endpoint:
      return std::fabs(sample_stable(law, 1.0, g));
  }
  return 0.0;
}

void fill_values(const StableLaw& law, Seminorm sn, double p, Route route, std::size_t grid_n,
                 double eta, double thr, std::uint64_t seed, std::uint64_t phase,
                 unsigned threads, std::vector<double>& slots) {
  run_replicates(slots.size(), threads, [&](std::size_t i) {
    RngStream g(seed, stream_id(phase, i));
    slots[i] = route_value(law, sn, p, route, grid_n, eta, thr, g);
  });
}

std::uint64_t hits_leq(const std::vector<double>& sorted, double eps) {
  return static_cast<std::uint64_t>(
      std::upper_bound(sorted.begin(), sorted.end(), eps) - sorted.begin());
}

}  // namespace

const char* to_string(Seminorm s) {
  switch (s) {
    case Seminorm::pvar:
      return "pvar";
    case Seminorm::sup:
      return "sup";
    case Seminorm::oscillation:
      return "oscillation";
    case Seminorm::l2:
      return "l2";
    case Seminorm::holder:
      return "holder";
  }
  return "pvar";
}

const char* to_string(Route r) {
  switch (r) {
    case Route::grid:
      return "grid";
    case Route::jumps:
      return "jumps";
    case Route::subordinator_endpoint:
      return "subordinator_endpoint";
  }
  return "grid";
}

void run_replicates(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t t = std::min<std::size_t>(threads, n);
  std::vector<std::exception_ptr> errs(t);
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (std::size_t w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t lo = n * w / t;
      const std::size_t hi = n * (w + 1) / t;
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errs[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errs)
    if (e) std::rethrow_exception(e);
}

SmallBallEstimate estimate_smallball(const StableLaw& law, Seminorm sn, double p,
                                     const MCConfig& cfg) {
  if (cfg.epsilon_list.empty())
    throw std::invalid_argument("estimate_smallball: epsilon_list must be non-empty");
  if (cfg.n_paths < 1 || cfg.grid_n < 2)
    throw std::invalid_argument("estimate_smallball: need n_paths >= 1 and grid_n >= 2");
  const RouteSpec rs = resolve_route(law, sn, p);

  SmallBallEstimate est;
  est.seminorm = sn;
  est.p = p;
  est.route = rs.route;
  est.gamma = rs.gamma;
  est.n_paths = cfg.n_paths;
  est.grid_n = cfg.grid_n;
  est.master_seed = cfg.master_seed;

  std::vector<double> candidates = cfg.epsilon_list;
  std::sort(candidates.begin(), candidates.end());

  // Pilot pre-screen. A single pilot hit already projects ~100 hits in the
  // 100x main run, so any epsilon the pilot reaches is kept. A zero-hit
  // epsilon is kept only while it stays within a factor of two of the
  // smallest pilot value (the marginal zone a 1% pilot cannot resolve);
  // far below that the main run is certain to be wasted. Below 50 pilot
  // replicates the minimum is too noisy to certify anything and the screen
  // stays off.
  const std::size_t n_pilot = std::max<std::size_t>(1, cfg.n_paths / 100);
  std::vector<double> pilot(n_pilot);
  fill_values(law, sn, p, rs.route, cfg.grid_n, cfg.eta, candidates.back(), cfg.master_seed,
              kPhasePilot, cfg.threads, pilot);
  std::sort(pilot.begin(), pilot.end());

  std::vector<double> kept;
  for (double eps : candidates) {
    if (n_pilot < 50 || hits_leq(pilot, eps) > 0 || eps >= 0.5 * pilot.front()) {
      kept.push_back(eps);
    } else {
      est.warnings.push_back("epsilon " + short_num(eps) +
                             " dropped: pilot projects fewer than 10 hits");
    }
  }
  if (kept.empty())
    throw infeasible_error(
        "estimate_smallball: every epsilon is infeasible at n_paths = " +
        std::to_string(cfg.n_paths) +
        "; smallest feasible epsilon from the pilot is about " + short_num(pilot.front()));

  // Main run on one shared sample: hits are nested so p_hat is exactly
  // monotone in epsilon.
  std::vector<double> values(cfg.n_paths);
  fill_values(law, sn, p, rs.route, cfg.grid_n, cfg.eta, kept.back(), cfg.master_seed, kPhaseMain,
              cfg.threads, values);
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());

  // Grid-doubling sensitivity arm (grid route only; the jump and endpoint
  // routes have no grid to refine).
  std::vector<double> sorted2;
  const bool do_doubling = cfg.grid_doubling && rs.route == Route::grid;
  if (do_doubling) {
    std::vector<double> values2(cfg.n_paths);
    fill_values(law, sn, p, rs.route, 2 * cfg.grid_n, cfg.eta, kept.back(), cfg.master_seed,
                kPhaseSensitivity, cfg.threads, values2);
    sorted2 = std::move(values2);
    std::sort(sorted2.begin(), sorted2.end());
  } else if (cfg.grid_doubling) {
    est.warnings.push_back("grid-doubling sensitivity skipped: route has no grid");
  }

  const double n_d = static_cast<double>(cfg.n_paths);
  for (double eps : kept) {
    EpsilonEstimate e;
    e.epsilon = eps;
    e.hits = hits_leq(sorted, eps);
    e.p_hat = static_cast<double>(e.hits) / n_d;
    e.se = std::sqrt(e.p_hat * (1.0 - e.p_hat) / n_d);
    const WilsonInterval wi =
        wilson_interval(static_cast<std::size_t>(e.hits), cfg.n_paths, cfg.wilson_z);
    e.p_lo = wi.lo;
    e.p_hi = wi.hi;
    if (e.hits >= 10) {
      const double w = std::pow(eps, rs.gamma);
      e.k_valid = true;
      e.k_hat = -w * std::log(e.p_hat);
      e.k_lo = -w * std::log(e.p_hi);
      e.k_hi = -w * std::log(e.p_lo);
    }
    if (do_doubling) {
      const std::uint64_t h2 = hits_leq(sorted2, eps);
      e.p_hat_doubled = static_cast<double>(h2) / n_d;
      const double se2 = std::sqrt(e.p_hat_doubled * (1.0 - e.p_hat_doubled) / n_d);
      e.sensitivity_flag =
          std::fabs(e.p_hat - e.p_hat_doubled) > std::sqrt(e.se * e.se + se2 * se2);
    }
    est.per_epsilon.push_back(e);
  }

  // Two-parameter fit log p_hat = -K eps^{-gamma} + c over the valid points.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (const auto& e : est.per_epsilon) {
    if (!e.k_valid) continue;
    const double x = std::pow(e.epsilon, -rs.gamma);
    const double y = std::log(e.p_hat);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2) {
    const double md = static_cast<double>(m);
    const double denom = md * sxx - sx * sx;
    if (denom > 0.0) {
      const double slope = (md * sxy - sx * sy) / denom;
      est.fit.valid = true;
      est.fit.k_fit = -slope;
      est.fit.c_fit = (sy - slope * sx) / md;
      est.fit.points = m;
    }
  }
  return est;
}

LaplaceReport laplace_mc(const StableLaw& law, double p, const std::vector<double>& lambda_list,
                         const MCConfig& cfg) {
  if (!(law.alpha < 2.0 && p > law.alpha))
    throw std::invalid_argument("laplace_mc: requires alpha < 2 and p > alpha");
  const SubordinatorLaw sp = sp_law(law, p);

  LaplaceReport rep;
  rep.index = sp.alpha;
  rep.constant = sp.kappa;
  rep.eta = cfg.eta;

  std::vector<double> s_jump(cfg.n_paths), s_direct(cfg.n_paths);
  run_replicates(cfg.n_paths, cfg.threads, [&](std::size_t i) {
    RngStream g(cfg.master_seed, stream_id(kPhaseMain, i));
    s_jump[i] = sample_sp_eta(law, cfg.eta, p, g);
  });
  run_replicates(cfg.n_paths, cfg.threads, [&](std::size_t i) {
    RngStream g(cfg.master_seed, stream_id(kPhasePilot, i));
    s_direct[i] = sample_one_sided(sp, g);
  });

  const double n_d = static_cast<double>(cfg.n_paths);
  for (double lam : lambda_list) {
    LaplacePoint pt;
    pt.lambda = lam;
    pt.exact = std::exp(-sp.kappa * std::pow(lam, sp.alpha));
    auto arm = [&](const std::vector<double>& s, double& mean, double& se) {
      KahanSum acc;
      for (double v : s) acc.add(std::exp(-lam * v));
      mean = acc.value() / n_d;
      KahanSum var;
      for (double v : s) {
        const double d = std::exp(-lam * v) - mean;
        var.add(d * d);
      }
      se = cfg.n_paths > 1 ? std::sqrt(var.value() / (n_d * (n_d - 1.0))) : 0.0;
    };
    arm(s_jump, pt.jump_estimate, pt.jump_se);
    arm(s_direct, pt.direct_estimate, pt.direct_se);
    if (lam > 0.0) {
      const double w = std::pow(lam, -sp.alpha);
      pt.rescaled_log_jump = -std::log(pt.jump_estimate) * w;
      pt.rescaled_log_direct = -std::log(pt.direct_estimate) * w;
    }
    rep.points.push_back(pt);
  }
  return rep;
}

GreenwoodReport greenwood_identity_check(const StableLaw& law, double p, const MCConfig& cfg) {
  if (!(p <= 1.0)) throw std::invalid_argument("greenwood_identity_check: requires p <= 1");
  if (!(law.alpha < p))
    throw std::invalid_argument("greenwood_identity_check: requires alpha < p");
  const std::vector<double> etas = {1e-2, 1e-3, 1e-4};

  GreenwoodReport rep;
  rep.p = p;

  std::vector<std::vector<double>> sums(etas.size(), std::vector<double>(cfg.n_paths));
  std::vector<unsigned char> mismatch(cfg.n_paths, 0);
  run_replicates(cfg.n_paths, cfg.threads, [&](std::size_t i) {
    RngStream g(cfg.master_seed, stream_id(kPhaseMain, i));
    const JumpSet fine = simulate_jumps(law, etas.back(), g);
    for (std::size_t l = 0; l < etas.size(); ++l) {
      JumpSet trunc;
      trunc.eta = etas[l];
      for (const Jump& j : fine.jumps)
        if (std::fabs(j.size) >= etas[l]) trunc.jumps.push_back(j);
      const double via_seminorm = jump_p_sum(trunc, p);
      const double via_jumps = sp_from_jumps(trunc, p);
      if (std::memcmp(&via_seminorm, &via_jumps, sizeof(double)) != 0) mismatch[i] = 1;
      sums[l][i] = via_seminorm;
    }
  });

  std::vector<double> direct(cfg.n_paths);
  const SubordinatorLaw sp = sp_law(law, p);
  run_replicates(cfg.n_paths, cfg.threads, [&](std::size_t i) {
    RngStream g(cfg.master_seed, stream_id(kPhasePilot, i));
    direct[i] = sample_one_sided(sp, g);
  });

  for (unsigned char m : mismatch) rep.structural_mismatches += m;
  for (std::size_t l = 0; l < etas.size(); ++l) {
    GreenwoodLevel lev;
    lev.eta = etas[l];
    lev.ks = ks_two_sample(sums[l], direct);
    rep.levels.push_back(lev);
  }
  rep.ks_monotone = true;
  for (std::size_t l = 1; l < rep.levels.size(); ++l)
    if (rep.levels[l].ks.statistic > rep.levels[l - 1].ks.statistic) rep.ks_monotone = false;
  return rep;
}

StrictGapReport strict_gap_test(const StableLaw& law, double p, const MCConfig& cfg) {
  if (!(p > 1.0 && p > law.alpha))
    throw std::invalid_argument("strict_gap_test: requires p > max(1, alpha)");
  if (cfg.grid_n % 2 != 0) throw std::invalid_argument("strict_gap_test: grid_n must be even");

  std::vector<double> full(cfg.n_paths), halves(cfg.n_paths);
  run_replicates(cfg.n_paths, cfg.threads, [&](std::size_t i) {
    RngStream g(cfg.master_seed, stream_id(kPhaseMain, i));
    const PathGrid path = simulate_grid(law, cfg.grid_n, g);
    const std::size_t mid = cfg.grid_n / 2;
    const std::vector<double> left(path.values.begin(), path.values.begin() + mid + 1);
    const std::vector<double> right(path.values.begin() + mid, path.values.end());
    full[i] = pvar_dp(path.values, p).value;
    halves[i] = pvar_dp(left, p).value + pvar_dp(right, p).value;
  });

  StrictGapReport rep;
  rep.paths = cfg.n_paths;
  KahanSum gap;
  std::size_t with_value = 0;
  for (std::size_t i = 0; i < cfg.n_paths; ++i) {
    const double v = full[i], h = halves[i];
    if (h > v * (1.0 + 1e-9)) ++rep.superadditivity_violations;
    if (v - h > 1e-9 * v) ++rep.strict_gaps;
    if (v > 0.0) {
      gap.add((v - h) / v);
      ++with_value;
    }
  }
  rep.gap_frequency = static_cast<double>(rep.strict_gaps) / static_cast<double>(cfg.n_paths);
  rep.mean_relative_gap = with_value ? gap.value() / static_cast<double>(with_value) : 0.0;
  return rep;
}

ScaledSumReport scaled_sum_ks_test(const StableLaw& law, double p, KsSource source,
                                   const MCConfig& cfg) {
  if (!(p > 1.0 && p > law.alpha))
    throw std::invalid_argument("scaled_sum_ks_test: requires p > max(1, alpha)");
  if (source == KsSource::exact_one_sided && !(law.alpha < 2.0))
    throw std::invalid_argument("scaled_sum_ks_test: exact one-sided source needs alpha < 2");

  const auto draw = [&](std::uint64_t phase, std::size_t i) {
    RngStream g(cfg.master_seed, stream_id(phase, i));
    if (source == KsSource::exact_one_sided) return sample_one_sided(sp_law(law, p), g);
    return pvar_dp(simulate_grid(law, cfg.grid_n, g).values, p).value;
  };

  std::vector<double> a(cfg.n_paths), b(cfg.n_paths);
  const double scale = std::pow(2.0, -p / law.alpha);
  run_replicates(cfg.n_paths, cfg.threads,
                 [&](std::size_t i) { a[i] = draw(kPhaseMain, i); });
  run_replicates(cfg.n_paths, cfg.threads, [&](std::size_t i) {
    b[i] = scale * (draw(kPhaseArmA, i) + draw(kPhaseArmB, i));
  });

  ScaledSumReport rep;
  rep.source = source;
  rep.n = cfg.n_paths;
  rep.ks = ks_two_sample(a, b, 0.001);
  return rep;
}

SubordinationReport subordination_bound_check(double alpha, double kappa, double p,
                                              const MCConfig& cfg) {
  if (!(alpha < 2.0 && p > 2.0))
    throw std::invalid_argument("subordination_bound_check: requires alpha < 2 < p");

  std::vector<double> ratio(cfg.n_paths);
  run_replicates(cfg.n_paths, cfg.threads, [&](std::size_t i) {
    RngStream g(cfg.master_seed, stream_id(kPhaseMain, i));
    const SubordinatedPath sp = simulate_subordinated(alpha, kappa, cfg.grid_n, g);
    KahanSum lhs;
    for (std::size_t k = 0; k < cfg.grid_n; ++k)
      lhs.add(pow_abs(sp.composed[k + 1] - sp.composed[k], p));
    const double h_pow = holder_sup_pth(sp.w_times, sp.w_values, p);
    const double rhs = h_pow * sp.sub_values.back();
    ratio[i] = rhs > 0.0 ? lhs.value() / rhs : 0.0;
  });

  SubordinationReport rep;
  rep.paths = cfg.n_paths;
  for (double r : ratio) {
    if (r > 1.0 + 1e-9) ++rep.violations;
    rep.max_ratio = std::max(rep.max_ratio, r);
  }
  return rep;
}

TailEstimate tail_index_of_sp(const StableLaw& law, double p, std::size_t n, std::size_t k,
                              std::uint64_t master_seed, unsigned threads) {
  const SubordinatorLaw sp = sp_law(law, p);
  std::vector<double> samples(n);
  run_replicates(n, threads, [&](std::size_t i) {
    RngStream g(master_seed, stream_id(kPhaseMain, i));
    samples[i] = sample_one_sided(sp, g);
  });
  return hill_tail_index(std::move(samples), k);
}

}  // namespace smallball
