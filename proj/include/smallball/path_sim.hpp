#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "smallball/rng.hpp"
#include "smallball/stable_law.hpp"

namespace smallball {

// Path observed on the uniform grid {k/n : k = 0..n} of [0,1]; values[0] = 0.
struct PathGrid {
  std::size_t n = 0;
  std::vector<double> values;  // size n+1
  std::string method;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

struct Jump {
  double time;  // in [0,1)
  double size;  // |size| >= eta
};

// Jumps of |size| >= eta on the unit horizon, sorted by time.
struct JumpSet {
  std::vector<Jump> jumps;
  double eta = 0.0;
};

// Symmetric alpha-stable path realized as W composed with an (alpha/2)-stable
// subordinator sigma. W is sampled on a refined uniform grid of [0, sigma_1]
// and bridge-interpolated at the exact query times sigma(k/n); the full point
// set of W (refined grid merged with the bridge samples) is retained.
struct SubordinatedPath {
  std::size_t n = 0;
  std::vector<double> sub_values;  // sigma(k/n), size n+1, sub_values[0] = 0
  std::vector<double> composed;    // Z(k/n) = W(sigma(k/n)), size n+1
  std::vector<double> w_times;     // sorted times in [0, sigma_1]
  std::vector<double> w_values;    // W at w_times
};

// Exact-in-law marginals: n iid copies of n^{-1/alpha} Z_1, summed.
PathGrid simulate_grid(const StableLaw& law, std::size_t n, RngStream& g);

// All jumps of |size| >= eta on [0,1]: Poisson counts per side, inverse-CDF
// tail sampling |z| = eta U^{-1/alpha}, uniform times. Requires alpha < 2.
JumpSet simulate_jumps(const StableLaw& law, double eta, RngStream& g);

// S^{p,eta}_1 = sum |jump|^p (compensated summation).
double sp_from_jumps(const JumpSet& jumps, double p);

// S^{p,eta}_1 drawn without materializing the jump set: Poisson counts per
// side, iid tail sizes, no times, no sort. Same law as
// sp_from_jumps(simulate_jumps(law, eta, g), p) at a fraction of the cost.
// Accumulation stops early once the running sum exceeds stop_above (the sum
// is nondecreasing, so the returned value still compares correctly).
double sample_sp_eta(const StableLaw& law, double eta, double p, RngStream& g,
                     double stop_above = std::numeric_limits<double>::infinity());

// Pure-jump step path on the uniform grid: values[k] = sum of sizes with time <= k/n.
PathGrid step_path_from_jumps(const JumpSet& jumps, std::size_t n);

// Subordinated representation of the symmetric law with Fourier constant kappa,
// alpha in (0,2); refinement factor 4 for the Brownian grid.
SubordinatedPath simulate_subordinated(double alpha, double kappa, std::size_t n,
                                       RngStream& g);

// In-place values[k] += b * k/n.
void add_drift(PathGrid& path, double b);

}  // namespace smallball
