#pragma once

#include <cstddef>
#include <vector>

#include "smallball/path_sim.hpp"

namespace smallball {

// Strong p-variation of a value sequence: the supremum of Sum |x[i_j] - x[i_{j-1}]|^p
// over all increasing index subsequences, any start, any end.
//
// `value` is that supremum; `root` = value^{1/p} is computed through an
// oscillation-normalized accumulator and stays finite and accurate for large p
// where `value` itself would over- or underflow.
struct VariationResult {
  double value = 0.0;
  double root = 0.0;
  double p = 1.0;
  // Witness partition re-evaluating to `value`; lexicographically smallest
  // among optimal partitions supported on the direction-change skeleton.
  std::vector<std::size_t> optimal_indices;
};

// Per-block p-variations over the uniform index split s_k = k*(len-1)/n_blocks.
struct BlockDecomposition {
  std::size_t n_blocks = 0;
  std::vector<double> block_values;     // V_p over [s_{k-1}, s_k], k = 1..n_blocks
  std::vector<std::size_t> boundaries;  // s_0 = 0 .. s_{n_blocks} = len-1
};

// Two-sided witness of a deterministic inequality on one path.
struct LemmaWitness {
  bool premise = true;  // hypothesis satisfied (identically true for lemma1)
  bool holds = true;    // !premise || lhs <= rhs * (1 + 1e-12)
  double lhs = 0.0;
  double rhs = 0.0;
};

// Exact DP over the local-extrema skeleton, O(m^2) in the skeleton size.
// Rejects p < 1 (only step functions carry finite p-variation there; use
// jump_p_sum for those).
VariationResult pvar_dp(const std::vector<double>& values, double p);

// Exhaustive 2^length enumeration, length <= 20; the oracle for pvar_dp.
// Ties resolved to the lexicographically smallest index set over all indices.
VariationResult pvar_bruteforce(const std::vector<double>& values, double p);

// Supremum restricted to partitions whose consecutive index gaps are <= max_gap
// (mesh-restricted variation); DP with bounded lookback on the raw sequence.
double pvar_mesh(const std::vector<double>& values, double p, std::size_t max_gap);

// pvar_dp on each block of the uniform split; len-1 must be divisible by n_blocks.
BlockDecomposition block_pvars(const std::vector<double>& values, double p,
                               std::size_t n_blocks);

// Sum |jump|^p of a pure-jump path; the semi-norm view of sp_from_jumps.
inline double jump_p_sum(const JumpSet& jumps, double p) { return sp_from_jumps(jumps, p); }

double sup_norm(const std::vector<double>& values);

// max - min over the sequence.
double oscillation(const std::vector<double>& values);

// Discrete (1/p)-Hoelder semi-norm on the uniform grid {k/n}:
// max over i < j of |x_j - x_i| / ((j-i)/n)^{1/p}.
double holder_seminorm(const std::vector<double>& values, double p, std::size_t n);

// max over i < j of |v_j - v_i|^p / (t_j - t_i) for strictly increasing times;
// the p-th power form used by the subordination bound. Exact block pruning.
double holder_sup_pth(const std::vector<double>& times, const std::vector<double>& values,
                      double p);

// Left-endpoint Riemann approximation of the L2([0,1]) norm on the uniform grid.
double l2_norm(const std::vector<double>& values);

// V_p <= Sum_k V_p^{k,n} + n_blocks * oscillation^p.
LemmaWitness lemma1_check(const std::vector<double>& values, double p, std::size_t n_blocks);

// If every block satisfies V_p^{k,n} <= epsilon and every boundary satisfies
// (x[s_k] - x[s_{k-1}]) * x[s_k] <= 0, then V_p <= 5^p * n_blocks * epsilon.
// The implication is guaranteed for sequences whose first value is 0 (the sign
// chain then pins every boundary value to 0); premise-false inputs return
// holds = true vacuously.
LemmaWitness lemma2_check(const std::vector<double>& values, double p, std::size_t n_blocks,
                          double epsilon);

}  // namespace smallball
