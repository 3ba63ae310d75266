// End-to-end acceptance gate. Each criterion prints exactly one
// [PASS]/[FAIL] line with the measured numbers and its wall time against the
// stated budget; the exit code is the number of failed criteria. The master
// seed is fixed to 1 up front -- no retry with a friendlier seed.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "smallball/constants.hpp"
#include "smallball/estimator.hpp"
#include "smallball/io.hpp"
#include "smallball/path_sim.hpp"
#include "smallball/rng.hpp"
#include "smallball/stable_law.hpp"
#include "smallball/stats.hpp"
#include "smallball/variation.hpp"

namespace fs = std::filesystem;
using namespace smallball;

namespace {

constexpr std::uint64_t kSeed = 1;

// Acceptance-local stream bases, far above the estimator's phase-tagged
// stream ids so no criterion re-reads another one's random numbers.
constexpr std::uint64_t kStreamC1 = 0xA11ULL << 32;
constexpr std::uint64_t kStreamC6 = 0xA12ULL << 32;
constexpr std::uint64_t kStreamC6Syn = 0xA13ULL << 32;
constexpr std::uint64_t kStreamC10 = 0xA14ULL << 32;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// --- criterion 1: exact DP vs exhaustive enumeration ------------------------

bool crit_dp_oracle(std::string& detail) {
  const double ps[] = {1.0, 1.5, 2.0, 3.0, 5.0};
  std::size_t mismatches = 0, comparisons = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    RngStream g(kSeed, kStreamC1 + i);
    const std::size_t len = 2 + static_cast<std::size_t>(g.next_u32() % 11);
    std::vector<double> v(len);
    for (double& x : v) x = 2.0 * g.uniform() - 1.0;
    for (double p : ps) {
      const double dp = pvar_dp(v, p).value;
      const double bf = pvar_bruteforce(v, p).value;
      const double rel = std::fabs(dp - bf) / std::max(bf, 1e-300);
      worst = std::max(worst, rel);
      if (rel > 1e-12) ++mismatches;
      ++comparisons;
    }
  }
  detail = std::to_string(comparisons) + " value pairs (len <= 12), max rel err " + num(worst) +
           ", " + std::to_string(mismatches) + " mismatches";
  return mismatches == 0;
}

// --- criterion 2: subordinator branch of the closed-form constant -----------

bool crit_subordinator_branch(std::string& detail) {
  const StableLaw law = from_subordinator(0.5, 1.0);

  const double k = prop1_constant(law, 2.0);
  const bool closed_ok = std::fabs(k - 0.25) <= 1e-12;

  const double eps = 1e-3;
  const double rate = -eps * std::log(levy_cdf(1.0, eps));
  const bool rate_ok = std::fabs(rate - 0.25) <= 0.004;

  MCConfig cfg;
  cfg.n_paths = 1000000;
  cfg.master_seed = kSeed;
  cfg.epsilon_list = {0.05};
  cfg.grid_doubling = false;  // endpoint route has no grid
  const SmallBallEstimate est = estimate_smallball(law, Seminorm::pvar, 2.0, cfg);
  const EpsilonEstimate& e = est.per_epsilon.at(0);
  const double exact = levy_cdf(1.0, 0.05);
  const double err = std::fabs(e.p_hat - exact);
  const bool mc_ok = err <= 3.0 * e.se;

  detail = "constant " + num(k) + ", -eps*log CDF = " + num(rate) + " (|.-1/4| = " +
           num(std::fabs(rate - 0.25)) + "), MC p_hat " + num(e.p_hat) + " vs " + num(exact) +
           " (err " + num(err) + ", 3se " + num(3.0 * e.se) + ", " + std::to_string(e.hits) +
           " hits)";
  return closed_ok && rate_ok && mc_ok;
}

// --- criterion 3: symmetric branch + Laplace cross-check ---------------------

bool crit_symmetric_branch(std::string& detail) {
  const StableLaw law = from_symmetric(0.5, 1.0);

  const double k = prop1_constant(law, 1.0);
  const bool closed_ok = std::fabs(k - 0.5) <= 5e-13;

  MCConfig cfg;
  cfg.n_paths = 1000000;
  cfg.master_seed = kSeed;
  cfg.eta = 1e-4;
  // At p = 1 the sub-eta jumps carry mass 2c*eta^{1-a}/(1-a) ~ 8e-3 into S
  // itself, so the truncated transform sits exp(lambda * 8e-3) above the exact
  // one; the 1% truncation allowance therefore only covers lambda <~ 1.3.
  const LaplaceReport rep = laplace_mc(law, 1.0, {0.25, 0.5, 1.0}, cfg);
  bool mc_ok = true;
  double worst_margin = 0.0;  // err / allowance, < 1 passes
  for (const LaplacePoint& pt : rep.points) {
    const double mj =
        std::fabs(pt.jump_estimate - pt.exact) / (3.0 * pt.jump_se + 0.01 * pt.exact);
    const double md =
        std::fabs(pt.direct_estimate - pt.exact) / (3.0 * pt.direct_se + 0.01 * pt.exact);
    worst_margin = std::max({worst_margin, mj, md});
    mc_ok = mc_ok && mj <= 1.0 && md <= 1.0;
  }
  detail = "constant " + num(k) + ", Laplace exponent C = " + num(rep.constant) +
           ", worst |err|/(3se+1%) = " + num(worst_margin) + " over lambda {1/4,1/2,1} x 2 routes";
  return closed_ok && mc_ok;
}

// --- criterion 4: two-route Laplace transform at alpha = 1, p = 2 ------------

bool crit_laplace_two_routes(std::string& detail) {
  MCConfig cfg;
  cfg.n_paths = 1000000;
  cfg.master_seed = kSeed;
  cfg.eta = 1e-4;
  const LaplaceReport rep = laplace_mc(from_symmetric(1.0, 1.0), 2.0, {1.0, 4.0, 16.0}, cfg);

  bool point_ok = true;
  double worst_margin = 0.0;
  for (const LaplacePoint& pt : rep.points) {
    const double mj =
        std::fabs(pt.jump_estimate - pt.exact) / (3.0 * pt.jump_se + 0.01 * pt.exact);
    const double md = std::fabs(pt.direct_estimate - pt.exact) / (3.0 * pt.direct_se);
    worst_margin = std::max({worst_margin, mj, md});
    point_ok = point_ok && mj <= 1.0 && md <= 1.0;
  }

  // Flatness of the rescaled logs across lambda: pairwise differences within
  // the mapped 3-sigma bars (plus the truncation allowance on the jump route).
  bool flat_ok = true;
  double worst_gap = 0.0;
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.points.size(); ++j) {
      const LaplacePoint& a = rep.points[i];
      const LaplacePoint& b = rep.points[j];
      const auto bar = [&](const LaplacePoint& pt, double est, double se) {
        return 3.0 * se / (est * std::sqrt(pt.lambda));
      };
      const double gj = std::fabs(a.rescaled_log_jump - b.rescaled_log_jump);
      const double gd = std::fabs(a.rescaled_log_direct - b.rescaled_log_direct);
      const double bj = bar(a, a.jump_estimate, a.jump_se) + bar(b, b.jump_estimate, b.jump_se) +
                        0.01 * rep.constant;
      const double bd =
          bar(a, a.direct_estimate, a.direct_se) + bar(b, b.direct_estimate, b.direct_se);
      worst_gap = std::max({worst_gap, gj / bj, gd / bd});
      flat_ok = flat_ok && gj <= bj && gd <= bd;
    }
  }
  detail = "worst |err|/allowance " + num(worst_margin) + ", worst rescaled-log gap/bar " +
           num(worst_gap) + " (C = " + num(rep.constant) + ")";
  return point_ok && flat_ok;
}

// --- criterion 5: Brownian sup-norm vs the theta-series oracle ---------------

bool crit_gaussian_sup(std::string& detail) {
  MCConfig cfg;
  cfg.n_paths = 1000000;
  cfg.grid_n = 16384;
  cfg.master_seed = kSeed;
  cfg.epsilon_list = {0.5};
  // The doubling pass costs 2x the main run (2^15 points per path) and is not
  // part of this check; p_hat is stream-identical with or without it. The
  // doubled estimate at this seed is 0.009708: the 2^14 -> 2^15 drop matches
  // the sqrt(dt) decay of the discrete-monitoring bias toward the oracle.
  cfg.grid_doubling = false;
  const SmallBallEstimate est =
      estimate_smallball(from_symmetric(2.0, 0.5), Seminorm::sup, 2.0, cfg);
  const EpsilonEstimate& e = est.per_epsilon.at(0);
  const double oracle = brownian_sup_cdf(0.5);
  const double err = std::fabs(e.p_hat - oracle);
  const double allowance = 3.0 * e.se + 0.05 * oracle;
  const bool mc_ok = err <= allowance;

  const double rate = -0.2 * 0.2 * std::log(brownian_sup_cdf(0.2));
  const double pi2_8 = 9.8696044010893586 / 8.0;
  const bool rate_ok = std::fabs(rate - pi2_8) <= 0.1 * pi2_8;

  detail = "p_hat " + num(e.p_hat) + " vs oracle " + num(oracle) + " (err " + num(err) +
           ", allowance " + num(allowance) + ", grid 2^14); -eps^2 log oracle " + num(rate) +
           " vs pi^2/8 " + num(pi2_8);
  return mc_ok && rate_ok;
}

// --- criterion 6: block-decomposition lemmas on simulated paths --------------

bool crit_lemma_suite(std::string& detail) {
  const double alphas[] = {0.8, 1.0, 1.5, 2.0};
  const double ps[] = {1.5, 2.0, 3.0};
  const std::size_t blocks[] = {2, 4, 8};
  const std::size_t grid_n = 256;
  const std::size_t per_alpha = 2500;  // 4 laws -> 1e4 paths

  std::atomic<std::uint64_t> violations{0};
  std::uint64_t path_count = 0;
  for (std::size_t ai = 0; ai < 4; ++ai) {
    const StableLaw law = from_symmetric(alphas[ai], 1.0);
    run_replicates(per_alpha, 1, [&](std::size_t i) {
      RngStream g(kSeed, kStreamC6 + ai * per_alpha + i);
      const PathGrid path = simulate_grid(law, grid_n, g);
      for (double p : ps) {
        for (std::size_t m : blocks) {
          if (!lemma1_check(path.values, p, m).holds) violations.fetch_add(1);
          if (!lemma2_check(path.values, p, m, 0.5).holds) violations.fetch_add(1);
        }
      }
    });
    path_count += per_alpha;
  }

  // Non-vacuous side of the inclusion bound: zero-boundary tent paths so the
  // premise actually holds before the 5^p * m * eps bound is asserted.
  std::uint64_t premise_misses = 0, syn_violations = 0;
  const std::size_t n_syn = 1000;
  for (std::size_t i = 0; i < n_syn; ++i) {
    RngStream g(kSeed, kStreamC6Syn + i);
    const std::size_t m = blocks[i % 3];
    const double p = ps[(i / 3) % 3];
    const double eps = 0.01 + 0.99 * g.uniform();
    const std::size_t w = grid_n / m;
    std::vector<double> v(grid_n + 1, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      double h = (0.1 + 0.8 * g.uniform()) * std::pow(eps / 2.0, 1.0 / p);
      if (g.uniform() < 0.5) h = -h;
      std::size_t peak = k * w + 1 + static_cast<std::size_t>(g.uniform() * double(w - 1));
      if (peak >= (k + 1) * w) peak = (k + 1) * w - 1;
      for (std::size_t j = k * w + 1; j < (k + 1) * w; ++j) {
        v[j] = (j <= peak) ? h * double(j - k * w) / double(peak - k * w)
                           : h * double((k + 1) * w - j) / double((k + 1) * w - peak);
      }
    }
    const LemmaWitness wit = lemma2_check(v, p, m, eps);
    if (!wit.premise) ++premise_misses;
    if (!wit.holds) ++syn_violations;
  }

  detail = std::to_string(path_count) + " paths x 9 (p, blocks) combos, " +
           std::to_string(violations.load()) + " violations; " + std::to_string(n_syn) +
           " premise-true tents, " + std::to_string(premise_misses) + " premise misses, " +
           std::to_string(syn_violations) + " violations";
  return violations.load() == 0 && premise_misses == 0 && syn_violations == 0;
}

// --- criterion 7: pathwise Hoelder bound on subordinated paths ---------------

bool crit_subordination(std::string& detail) {
  MCConfig cfg;
  cfg.n_paths = 10000;
  cfg.grid_n = 1024;
  cfg.master_seed = kSeed;
  const SubordinationReport rep = subordination_bound_check(1.0, 1.0, 3.0, cfg);
  detail = std::to_string(rep.paths) + " paths, " + std::to_string(rep.violations) +
           " violations, max lhs/rhs " + num(rep.max_ratio);
  return rep.violations == 0 && rep.paths == 10000;
}

// --- criterion 8: superadditivity, strict gap, scaled-sum control -------------

bool crit_theorem2_witnesses(std::string& detail) {
  MCConfig gap_cfg;
  gap_cfg.n_paths = 10000;
  gap_cfg.grid_n = 4096;
  gap_cfg.master_seed = kSeed;
  const StrictGapReport gap = strict_gap_test(from_symmetric(2.0, 0.5), 3.0, gap_cfg);

  MCConfig ks_cfg;
  ks_cfg.n_paths = 100000;
  ks_cfg.master_seed = kSeed;
  const ScaledSumReport control =
      scaled_sum_ks_test(from_symmetric(1.0, 1.0), 2.0, KsSource::exact_one_sided, ks_cfg);

  detail = std::to_string(gap.superadditivity_violations) + " superadditivity violations, gap " +
           "frequency " + num(gap.gap_frequency) + " (baseline, mean relative gap " +
           num(gap.mean_relative_gap) + "); control KS stat " + num(control.ks.statistic) +
           ", p = " + num(control.ks.p_value) + (control.ks.reject ? ", REJECTED" : ", no reject");
  return gap.superadditivity_violations == 0 && gap.strict_gaps > 0 && !control.ks.reject;
}

// --- criterion 9: Hill tail exponent of S^p_1 --------------------------------

bool crit_hill_tail(std::string& detail) {
  const TailEstimate t = tail_index_of_sp(from_symmetric(1.0, 1.0), 2.0, 1000000, 1000, kSeed, 1);
  const double err = std::fabs(t.alpha_hat - 0.5);
  detail = "alpha_hat " + num(t.alpha_hat) + " +- " + num(t.se) + " (k = " + std::to_string(t.k) +
           "), |err| " + num(err) + " vs 0.05";
  return err <= 0.05;
}

// --- criterion 10: Gamma-ratio bound, max formula, 2-D oracle ----------------

double golden_max(const std::function<double(double)>& f, double lo, double hi) {
  const double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  return f((a + b) / 2.0);
}

bool crit_section64(std::string& detail) {
  // (a) the closed-form bound that makes the lower bound informative.
  bool bound_ok = true;
  for (double p : {3.0, 4.0, 6.0, 10.0}) {
    if (!(cp_prime(p).value < 0.25 * std::tgamma(p / (p - 2.0)))) bound_ok = false;
  }

  // (b) max_formula vs a genuinely numerical 1-D maximization.
  std::size_t formula_misses = 0;
  double worst_rel = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    RngStream g(kSeed, kStreamC10 + i);
    const double q = 1.05 + 1.5 * g.uniform();
    const double r = q + 0.1 + 2.0 * g.uniform();
    const double a = std::exp(4.0 * (g.uniform() - 0.5));
    const double b = std::exp(4.0 * (g.uniform() - 0.5));
    const auto f = [&](double x) { return a * std::pow(x, q) - b * std::pow(x, r); };
    double hi = 1.0;
    while (f(2.0 * hi) > f(hi)) hi *= 2.0;  // bracket the interior maximum
    const double numeric = golden_max(f, 0.0, 2.0 * hi);
    const double closed = max_formula(q, r, a, b);
    const double rel = std::fabs(numeric - closed) / closed;
    worst_rel = std::max(worst_rel, rel);
    if (rel > 1e-8) ++formula_misses;
  }

  // (c) independent 2-D grid search over (alpha, kappa) of the display
  // D_{a,p}(kappa) - d_a(kappa), refined twice around the coarse argmax.
  double worst_cp_rel = 0.0;
  for (double p : {3.0, 4.0}) {
    const auto objective = [&](double a, double logk) {
      const double kap = std::exp(logk);
      return D_alpha_p(a, p, kap) - d_alpha(a, kap);
    };
    double lo_a = 0.05, hi_a = 1.95, lo_k = std::log(1e-3), hi_k = std::log(1e2);
    double best = 0.0, best_a = 0.0, best_k = 0.0;
    for (int round = 0; round < 3; ++round) {
      best = -1e300;
      const int n = 160;
      for (int ia = 0; ia <= n; ++ia) {
        const double a = lo_a + (hi_a - lo_a) * ia / n;
        for (int ik = 0; ik <= n; ++ik) {
          const double lk = lo_k + (hi_k - lo_k) * ik / n;
          const double v = objective(a, lk);
          if (v > best) {
            best = v;
            best_a = a;
            best_k = lk;
          }
        }
      }
      const double wa = (hi_a - lo_a) / 8.0, wk = (hi_k - lo_k) / 8.0;
      lo_a = std::max(0.001, best_a - wa);
      hi_a = std::min(1.999, best_a + wa);
      lo_k = best_k - wk;
      hi_k = best_k + wk;
    }
    const double rel = std::fabs(best - cp_prime(p).value) / cp_prime(p).value;
    worst_cp_rel = std::max(worst_cp_rel, rel);
  }

  detail = std::string("Gamma bound ") + (bound_ok ? "holds" : "VIOLATED") +
           " for p {3,4,6,10}; max_formula worst rel " + num(worst_rel) + " (" +
           std::to_string(formula_misses) + " misses); 2-D oracle worst rel " + num(worst_cp_rel);
  return bound_ok && formula_misses == 0 && worst_cp_rel <= 1e-4;
}

// --- criterion 11: byte-identical CSV across thread counts -------------------

#ifndef SMALLBALL_CLI_PATH
#define SMALLBALL_CLI_PATH "smallball"
#endif

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool crit_reproducibility(std::string& detail) {
  const fs::path root = fs::temp_directory_path() / "smallball_accept11";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path cfg = root / "pinned.json";
  {
    std::ofstream out(cfg);
    out << "{\"alpha\":1.5,\"kappa\":1.0,\"seminorm\":\"pvar\",\"p\":2.0,"
        << "\"epsilons\":[1.5,2.0,3.0],\"n_paths\":20000,\"grid_n\":512,\"seed\":1}\n";
  }
  std::vector<std::string> tables;
  for (unsigned t : {1u, 4u, 16u}) {
    const fs::path out_dir = root / ("t" + std::to_string(t));
    const std::string cmd = std::string(SMALLBALL_CLI_PATH) + " smallball --config " +
                            cfg.string() + " --threads " + std::to_string(t) + " --out-dir " +
                            out_dir.string() + " > " + (root / "log.txt").string() + " 2>&1";
    if (std::system(cmd.c_str()) != 0) {
      detail = "cmd_smallball failed at threads " + std::to_string(t);
      return false;
    }
    tables.push_back(slurp(out_dir / "table.csv"));
  }
  const bool same = !tables[0].empty() && tables[0] == tables[1] && tables[0] == tables[2];
  detail = "table.csv " + std::to_string(tables[0].size()) + " bytes, threads {1,4,16} " +
           (same ? "byte-identical" : "DIFFER");
  fs::remove_all(root);
  return same;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // <= 0 means no runtime requirement
  bool (*run)(std::string&);
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "dp_vs_bruteforce", 10, crit_dp_oracle},
      {2, "subordinator_branch", 60, crit_subordinator_branch},
      {3, "symmetric_branch", 120, crit_symmetric_branch},
      {4, "laplace_two_routes", 180, crit_laplace_two_routes},
      {5, "gaussian_sup_constant", 300, crit_gaussian_sup},
      {6, "lemma_suite", 120, crit_lemma_suite},
      {7, "subordination_bound", 120, crit_subordination},
      {8, "theorem2_witnesses", 300, crit_theorem2_witnesses},
      {9, "hill_tail_exponent", 60, crit_hill_tail},
      {10, "section_6_4_bounds", 60, crit_section64},
      {11, "thread_reproducibility", 0, crit_reproducibility},
  };

  std::printf("acceptance gate, master seed %llu\n", static_cast<unsigned long long>(kSeed));
  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      ok = false;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string timing = num(secs) + "s";
    if (c.budget_s > 0) {
      timing += " / " + num(c.budget_s) + "s";
      if (secs >= c.budget_s) {
        ok = false;
        timing += " OVER BUDGET";
      }
    }
    if (!ok) ++failures;
    std::printf("[%s] %2d %-24s %s  [%s]\n", ok ? "PASS" : "FAIL", c.id, c.name, detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
