#include "smallball/verify.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "smallball/estimator.hpp"
#include "smallball/path_sim.hpp"
#include "smallball/rng.hpp"
#include "smallball/stable_law.hpp"
#include "smallball/stats.hpp"
#include "smallball/variation.hpp"

namespace smallball {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::vector<CheckResult> suite_dp(unsigned threads) {
  const double ps[] = {1.0, 1.5, 2.0, 3.0, 5.0};
  const std::size_t n_seq = 1000;
  std::vector<std::vector<double>> seqs(n_seq);
  RngStream g(1001, 0);
  for (auto& s : seqs) {
    std::size_t len = 2 + static_cast<std::size_t>(g.uniform() * 11.0);
    if (len > 12) len = 12;
    s.resize(len);
    for (auto& x : s) x = 2.0 * g.uniform() - 1.0;
  }
  std::vector<CheckResult> out;
  for (double p : ps) {
    std::atomic<std::uint64_t> mismatches{0};
    run_replicates(n_seq, threads, [&](std::size_t i) {
      const auto a = pvar_dp(seqs[i], p);
      const auto b = pvar_bruteforce(seqs[i], p);
      const double tol = 1e-12 * std::max({1e-300, std::fabs(a.value), std::fabs(b.value)});
      if (std::fabs(a.value - b.value) > tol) mismatches.fetch_add(1);
    });
    const auto m = mismatches.load();
    out.push_back({"pvar_dp_vs_bruteforce_p" + fmt(p), m == 0,
                   std::to_string(n_seq) + " sequences of length <= 12, " + std::to_string(m) +
                       " mismatches"});
  }
  return out;
}

std::vector<CheckResult> suite_lemmas(unsigned threads) {
  const double alphas[] = {0.8, 1.0, 1.5, 2.0};
  const double ps[] = {1.5, 2.0, 3.0};
  const std::size_t blocks[] = {2, 4, 8};
  const std::size_t grid_n = 256;
  const std::size_t per_combo = 834;  // 12 combos -> 10008 paths
  std::vector<CheckResult> out;
  std::uint64_t combo = 0;
  for (double a : alphas) {
    for (double p : ps) {
      const StableLaw law = from_symmetric(a, 1.0);
      std::atomic<std::uint64_t> violations{0};
      run_replicates(per_combo, threads, [&](std::size_t i) {
        RngStream gen(2002, (combo << 32) | i);
        const PathGrid path = simulate_grid(law, grid_n, gen);
        for (std::size_t m : blocks) {
          if (!lemma1_check(path.values, p, m).holds) violations.fetch_add(1);
          if (!lemma2_check(path.values, p, m, 0.5).holds) violations.fetch_add(1);
        }
      });
      const auto v = violations.load();
      out.push_back({"lemma_bounds_alpha" + fmt(a) + "_p" + fmt(p), v == 0,
                     std::to_string(per_combo) + " paths x blocks {2,4,8}, " + std::to_string(v) +
                         " violations"});
      ++combo;
    }
  }

  // Synthetic paths that satisfy the inclusion premise non-vacuously: every
  // block returns to zero at its boundaries and stays a small tent inside.
  std::atomic<std::uint64_t> syn_violations{0};
  std::atomic<std::uint64_t> premise_misses{0};
  const std::size_t n_syn = 1000;
  run_replicates(n_syn, threads, [&](std::size_t i) {
    RngStream gen(2003, i);
    const std::size_t m = blocks[i % 3];
    const double p = ps[(i / 3) % 3];
    const double eps = 0.01 + 0.99 * gen.uniform();
    const std::size_t w = grid_n / m;
    std::vector<double> v(grid_n + 1, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      double h = (0.1 + 0.8 * gen.uniform()) * std::pow(eps / 2.0, 1.0 / p);
      if (gen.uniform() < 0.5) h = -h;
      std::size_t peak = k * w + 1 + static_cast<std::size_t>(gen.uniform() * double(w - 1));
      if (peak >= (k + 1) * w) peak = (k + 1) * w - 1;
      for (std::size_t j = k * w + 1; j < (k + 1) * w; ++j) {
        if (j <= peak)
          v[j] = h * double(j - k * w) / double(peak - k * w);
        else
          v[j] = h * double((k + 1) * w - j) / double((k + 1) * w - peak);
      }
    }
    const auto wit = lemma2_check(v, p, m, eps);
    if (!wit.premise) premise_misses.fetch_add(1);
    if (!wit.holds) syn_violations.fetch_add(1);
  });
  const auto sv = syn_violations.load();
  const auto pm = premise_misses.load();
  out.push_back({"lemma2_synthetic_premise", sv == 0 && pm == 0,
                 std::to_string(n_syn) + " zero-boundary tent paths, " + std::to_string(pm) +
                     " premise misses, " + std::to_string(sv) + " violations"});
  return out;
}

std::vector<CheckResult> suite_laplace(unsigned threads) {
  MCConfig cfg;
  cfg.n_paths = 100000;
  cfg.master_seed = 3003;
  cfg.eta = 1e-4;
  cfg.threads = threads;
  const StableLaw law = from_symmetric(1.0, 1.0);
  const LaplaceReport rep = laplace_mc(law, 2.0, {1.0, 4.0, 16.0}, cfg);
  std::vector<CheckResult> out;
  for (const auto& pt : rep.points) {
    const double jump_err = std::fabs(pt.jump_estimate - pt.exact);
    const double jump_tol = 3.0 * pt.jump_se + 0.01 * pt.exact;
    const double direct_err = std::fabs(pt.direct_estimate - pt.exact);
    const double direct_tol = 3.0 * pt.direct_se;
    const bool pass = jump_err <= jump_tol && direct_err <= direct_tol;
    out.push_back({"laplace_transform_lambda" + fmt(pt.lambda), pass,
                   "jump " + fmt(pt.jump_estimate) + ", direct " + fmt(pt.direct_estimate) +
                       ", exact " + fmt(pt.exact) + " (3 SE + 1% truncation)"});
  }
  return out;
}

std::vector<CheckResult> suite_subordination(unsigned threads) {
  MCConfig cfg;
  cfg.n_paths = 1000;
  cfg.grid_n = 512;
  cfg.master_seed = 4004;
  cfg.threads = threads;
  const SubordinationReport rep = subordination_bound_check(1.0, 1.0, 3.0, cfg);
  std::vector<CheckResult> out;
  out.push_back({"subordination_pathwise_bound", rep.violations == 0,
                 std::to_string(rep.paths) + " paths, " + std::to_string(rep.violations) +
                     " violations, max ratio " + fmt(rep.max_ratio)});
  return out;
}

std::vector<CheckResult> suite_gaussian(unsigned threads) {
  std::vector<CheckResult> out;

  // Small-ball probability of the Brownian sup-norm at eps = 1/2 against the
  // theta-series value, 3 SE plus a 5% discretization allowance.
  MCConfig cfg;
  cfg.n_paths = 100000;
  cfg.grid_n = 16384;
  cfg.master_seed = 5005;
  cfg.epsilon_list = {0.5};
  cfg.grid_doubling = false;
  cfg.threads = threads;
  const StableLaw law = from_symmetric(2.0, 0.5);  // standard Brownian motion
  const SmallBallEstimate est = estimate_smallball(law, Seminorm::sup, 2.0, cfg);
  const double oracle = brownian_sup_cdf(0.5);
  bool mc_pass = false;
  std::string mc_detail = "no surviving epsilon";
  if (!est.per_epsilon.empty()) {
    const auto& e = est.per_epsilon.front();
    const double tol = 3.0 * e.se + 0.05 * oracle;
    mc_pass = std::fabs(e.p_hat - oracle) <= tol;
    mc_detail = "p_hat " + fmt(e.p_hat) + " vs oracle " + fmt(oracle) + " (3 SE + 5%)";
  }
  out.push_back({"brownian_sup_smallball", mc_pass, mc_detail});

  const double kPi = 3.14159265358979323846;
  const double target = kPi * kPi / 8.0;
  const double eps = 0.2;
  const double k_hat = -eps * eps * std::log(brownian_sup_cdf(eps));
  out.push_back({"brownian_sup_rate_constant", std::fabs(k_hat - target) <= 0.10 * target,
                 "-eps^2 log P = " + fmt(k_hat) + " vs pi^2/8 = " + fmt(target) +
                     " at eps = 0.2 (10%)"});
  return out;
}

}  // namespace

std::vector<CheckResult> verify_suite(const std::string& suite, unsigned threads) {
  if (suite == "dp") return suite_dp(threads);
  if (suite == "lemmas") return suite_lemmas(threads);
  if (suite == "laplace") return suite_laplace(threads);
  if (suite == "subordination") return suite_subordination(threads);
  if (suite == "gaussian") return suite_gaussian(threads);
  throw std::invalid_argument("verify_suite: unknown suite '" + suite +
                              "' (expected dp, lemmas, laplace, subordination, gaussian)");
}

}  // namespace smallball
