#pragma once

#include "smallball/rng.hpp"

namespace smallball {

// Strictly stable law of index alpha in (0,2], canonically parametrized by the
// two sides of its jump measure:
//
//   nu(dz) = c_plus z^{-alpha-1} dz on z > 0,  c_minus |z|^{-alpha-1} dz on z < 0,
//
// plus the linear drift of the Levy-Ito decomposition. Strict stability pins
// the drift for alpha != 1 (c_plus = c_minus + drift*(1-alpha)); at alpha = 1
// the jump measure must be symmetric and the drift is free. alpha = 2 is the
// Gaussian endpoint Z_t = gauss_scale * W_t (no jump part).
//
// Sampler parameters (skewness and the Chambers-Mallows-Stuck scale) are
// derived once at construction.
struct StableLaw {
  double alpha = 2.0;
  double c_minus = 0.0;
  double c_plus = 0.0;
  double drift = 0.0;        // Levy-Ito linear part (only alpha = 1 takes a free value)
  double gauss_scale = 0.0;  // alpha = 2 only
  // Derived once:
  double beta_skew = 0.0;  // (c_plus - c_minus)/(c_plus + c_minus), alpha < 2
  double cms_scale = 0.0;  // scale sigma of the CMS sampler, alpha < 2

  bool symmetric() const;
  // True iff Z or -Z is a subordinator (alpha < 1 and one-sided jumps).
  bool is_subordinator_abs() const;
  // Fourier normalization: E exp(i l Z_t) = exp(-kappa t |l|^alpha).
  // Defined for symmetric laws and alpha = 2.
  double kappa_symmetric() const;
  // Laplace normalization of a subordinator: E exp(-l Z_t) = exp(-kappa t l^alpha).
  // Defined when is_subordinator_abs() (taken for |Z| when jumps are negative).
  double kappa_laplace() const;
};

// Symmetric law from the Fourier normalization; alpha = 2 allowed (kappa = a^2/2).
StableLaw from_symmetric(double alpha, double kappa);

// One-sided alpha-stable subordinator, alpha in (0,1), from its Laplace exponent.
StableLaw from_subordinator(double alpha, double kappa);

// General strictly stable law from the jump-measure sides, alpha in (0,2).
// For alpha != 1 the drift is determined by strict stability and `drift` must
// be 0; at alpha = 1 strictness forces c_minus = c_plus and `drift` is free.
StableLaw from_levy(double alpha, double c_minus, double c_plus, double drift = 0.0);

// Law of the p-th power jump sum S^p_t = sum_{s<=t} |dZ_s|^p for p > alpha:
// an (alpha/p)-stable subordinator, returned in the Laplace normalization.
struct SubordinatorLaw {
  double alpha;  // index in (0,1)
  double kappa;  // E exp(-l X_t) = exp(-kappa t l^alpha)
};

SubordinatorLaw sp_law(const StableLaw& law, double p);

// One draw of Z_t (exact in law; Chambers-Mallows-Stuck for alpha < 2).
double sample_stable(const StableLaw& law, double t, RngStream& g);

// One draw of X_1 for a positive strictly stable variable with
// E exp(-l X) = exp(-kappa l^alpha), alpha in (0,1).
double sample_one_sided(double alpha, double kappa, RngStream& g);
inline double sample_one_sided(const SubordinatorLaw& s, RngStream& g) {
  return sample_one_sided(s.alpha, s.kappa, g);
}

// Closed-form oracles.
// CDF of the alpha = 1/2 subordinator with E exp(-l Z) = exp(-kappa sqrt(l)).
double levy_cdf(double kappa, double x);
// Standard normal CDF.
double gaussian_cdf(double x);

}  // namespace smallball
