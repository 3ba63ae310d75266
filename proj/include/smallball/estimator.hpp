#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "smallball/stable_law.hpp"
#include "smallball/stats.hpp"

namespace smallball {

enum class Seminorm { pvar, sup, oscillation, l2, holder };
enum class Route { grid, jumps, subordinator_endpoint };

const char* to_string(Seminorm s);
const char* to_string(Route r);

struct MCConfig {
  std::size_t n_paths = 10000;
  std::size_t grid_n = 256;
  std::uint64_t master_seed = 1;
  double eta = 1e-4;  // jump truncation level for the jump route
  std::vector<double> epsilon_list;
  std::vector<double> lambda_list;
  unsigned threads = 1;
  bool grid_doubling = true;  // rerun at 2*grid_n and flag unstable estimates
  double wilson_z = 3.290526731491894;  // two-sided 99.9%
};

struct EpsilonEstimate {
  double epsilon = 0.0;
  std::uint64_t hits = 0;
  double p_hat = 0.0;
  double se = 0.0;
  double p_lo = 0.0, p_hi = 0.0;  // Wilson interval
  // K_hat = -epsilon^gamma * log p_hat, interval mapped through the same
  // (decreasing) transform; populated only when hits >= 10.
  bool k_valid = false;
  double k_hat = 0.0, k_lo = 0.0, k_hi = 0.0;
  // Grid-doubling sensitivity: |p_hat - p_hat(2n)| > combined SE.
  bool sensitivity_flag = false;
  double p_hat_doubled = 0.0;
};

// Least squares of log p_hat = -K * eps^{-gamma} + c over the eps with
// hits >= 10; c absorbs the pre-asymptotic correction (heuristic, not a
// statement about the convergence rate).
struct FitSummary {
  bool valid = false;
  double k_fit = 0.0;
  double c_fit = 0.0;
  std::size_t points = 0;
};

struct SmallBallEstimate {
  Seminorm seminorm = Seminorm::pvar;
  double p = 2.0;  // exponent of the pvar/holder semi-norm (unused otherwise)
  Route route = Route::grid;
  double gamma = 0.0;
  std::size_t n_paths = 0;
  std::size_t grid_n = 0;
  std::uint64_t master_seed = 0;
  std::vector<EpsilonEstimate> per_epsilon;
  FitSummary fit;
  std::vector<std::string> warnings;  // dropped epsilons, skipped sensitivity
};

// Small-ball probability estimation for one law and semi-norm. Route per law:
// grid everywhere except alpha < p <= 1 (jump route) and |Z| subordinator with
// p > 1 (endpoint shortcut ||Z||_p = |Z_1|). The epsilon list is pre-screened
// by a pilot of n_paths/100 (active from 50 pilot replicates up): an epsilon
// no pilot value reaches and lying below half the smallest pilot value is
// dropped (with a warning) as projecting fewer than 10 hits; if none survive,
// infeasible_error names the smallest feasible epsilon seen in the pilot.
SmallBallEstimate estimate_smallball(const StableLaw& law, Seminorm seminorm, double p,
                                     const MCConfig& cfg);

struct LaplacePoint {
  double lambda = 0.0;
  double jump_estimate = 0.0;  // mean exp(-lambda S^{p,eta}_1), truncated jumps
  double jump_se = 0.0;
  double direct_estimate = 0.0;  // mean exp(-lambda S), exact one-sided draws
  double direct_se = 0.0;
  double exact = 0.0;  // exp(-C lambda^{alpha/p})
  // -log(estimate) * lambda^{-alpha/p}; flat in lambda when the transform law
  // holds (equals C exactly in the limit).
  double rescaled_log_jump = 0.0;
  double rescaled_log_direct = 0.0;
};

struct LaplaceReport {
  double index = 0.0;     // alpha/p
  double constant = 0.0;  // C of the Laplace exponent C lambda^{alpha/p}
  double eta = 0.0;
  std::vector<LaplacePoint> points;
};

// E[exp(-lambda S^p_1)] two ways (truncated-jump simulation and exact
// one-sided sampling) against the closed form; alpha < 2, p > alpha.
LaplaceReport laplace_mc(const StableLaw& law, double p, const std::vector<double>& lambda_list,
                         const MCConfig& cfg);

struct GreenwoodLevel {
  double eta = 0.0;
  KsResult ks;  // truncated jump sums vs exact draws
};

struct GreenwoodReport {
  double p = 0.0;
  std::vector<GreenwoodLevel> levels;  // eta descending (coarse to fine)
  bool ks_monotone = false;            // KS distance decreases as eta drops
  std::uint64_t structural_mismatches = 0;  // jump_p_sum vs sp_from_jumps, shared sets
};

// For alpha < p <= 1: the p-th power semi-norm of a pure-jump path IS the
// truncated jump sum (structural identity), and converges in law to the
// one-sided stable S^p_1 as eta drops through {1e-2, 1e-3, 1e-4}.
GreenwoodReport greenwood_identity_check(const StableLaw& law, double p, const MCConfig& cfg);

struct StrictGapReport {
  std::size_t paths = 0;
  std::uint64_t superadditivity_violations = 0;  // V < V_L + V_R beyond rounding
  std::uint64_t strict_gaps = 0;                 // V > V_L + V_R + 1e-9 V
  double gap_frequency = 0.0;
  double mean_relative_gap = 0.0;
};

// Midpoint split of each path: V = pvar on [0,1], V_L, V_R on the halves.
// Superadditivity V >= V_L + V_R is deterministic; a strictly positive gap
// frequency witnesses that the variation functional is not additive in law.
StrictGapReport strict_gap_test(const StableLaw& law, double p, const MCConfig& cfg);

enum class KsSource { pvar_paths, exact_one_sided };

struct ScaledSumReport {
  KsSource source = KsSource::pvar_paths;
  std::size_t n = 0;
  KsResult ks;
};

// Two-sample KS between X and 2^{-p/alpha} (X_1 + X_2) on independent draws.
// X = V_p from grid paths (expected to reject: V_p is not stable), or exact
// one-sided S^p_1 draws as the negative control (stability identity holds).
ScaledSumReport scaled_sum_ks_test(const StableLaw& law, double p, KsSource source,
                                   const MCConfig& cfg);

struct SubordinationReport {
  std::size_t paths = 0;
  std::uint64_t violations = 0;
  double max_ratio = 0.0;  // max over paths of lhs/rhs
};

// Pathwise check of sum |Z increments|^p <= H^p * sigma_1 on subordinated
// paths, H = discrete Hoelder constant of W on [0, sigma_1]; alpha < 2 < p.
SubordinationReport subordination_bound_check(double alpha, double kappa, double p,
                                              const MCConfig& cfg);

// Hill tail estimate from N exact one-sided draws of S^p_1.
TailEstimate tail_index_of_sp(const StableLaw& law, double p, std::size_t n, std::size_t k,
                              std::uint64_t master_seed, unsigned threads);

// Replicate-parallel map over [0, n): static contiguous chunks per worker,
// deterministic output locations; rethrows the first worker exception.
void run_replicates(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace smallball
