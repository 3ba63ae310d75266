#pragma once

#include <optional>
#include <string>

#include "smallball/stable_law.hpp"

namespace smallball {

// Which closed-form regime the law/exponent pair falls into.
enum class ConstantsBranch { subordinator_p_gt_1, p_le_1, general };

const char* to_string(ConstantsBranch b);

struct GaussianConstants {
  double sup_constant = 0.0;  // pi^2/8
  double osc_constant = 0.0;  // pi^2/2
  double gamma2 = 0.0;        // kappa/4
  std::string note;
};

struct CpPrime {
  double value = 0.0;
  double argmax_alpha = 0.0;  // interior maximizer of the Gamma-ratio objective
};

// Small-deviation rate exponent gamma: -log P[||Z||_p <= eps] ~ K eps^{-gamma}.
// p*alpha/(p-alpha) in general; alpha/(1-alpha) when |Z| is a subordinator and
// p > 1 (the norm degenerates to |Z_1| there).
double gamma_exponent(double alpha, double p, bool abs_subordinator);

// Closed-form small-deviation constant in the two solved regimes:
//   alpha < p <= 1:            ((p-a)/a) * (((c-+c+)/p) Gamma(1-a/p))^{p/(p-a)}
//   |Z| subordinator, p > 1:   (1/a - 1) * (c Gamma(1-a))^{1/(1-a)}
double prop1_constant(const StableLaw& law, double p);

// The same expression as the first branch above, extended to p >= 1 as a lower
// bound on the (unknown) general constant; alpha < 2, p > alpha required.
double lower_bound_kap(const StableLaw& law, double p);

// Symmetric-law specialization of the lower bound in the Fourier normalization:
// ((p-a)/a) * ((2 a Gamma(a) sin(pi a/2) / (p pi)) Gamma(1-a/p))^{p/(p-a)} * kappa^{p/(p-a)}.
double D_alpha_p(double alpha, double p, double kappa);

// Small-deviation constant of the (alpha/2)-stable subordinator leg:
// ((2-a)/2) * a^{a/(2-a)} * kappa^{2/(2-a)}.
double d_alpha(double alpha, double kappa);

// max over x > 0 of a x^q - b x^r for 1 < q < r, a, b > 0:
// (1/q - 1/r) * (q a)^{r/(r-q)} * (r b)^{q/(q-r)}.
double max_formula(double q, double r, double a, double b);

// ((p-2)/p) * p^{2/(2-p)} * 2^{(p+2)/(p-2)} * max_{0<a<2} R(a)^{2p/(a(p-2))},
// R(a) = Gamma((1+a)/2) Gamma(1-a/p) / (Gamma(1/2) Gamma(1-a/2)); p > 2.
// The inner maximization runs in log-Gamma space: 200-point coarse scan on
// (1e-6, 2-1e-6), then golden-section to 1e-10.
CpPrime cp_prime(double p);

// {pi^2/8, pi^2/2, kappa/4}. The sup/oscillation entries are for the standard
// Brownian normalization kappa = 1/2; gamma2 carries the kappa dependence.
GaussianConstants gaussian_constants(double kappa);

// Everything applicable to one (law, p) pair; inapplicable entries are absent
// rather than NaN.
struct ConstantsReport {
  ConstantsBranch branch = ConstantsBranch::general;
  double alpha = 0.0;
  double p = 0.0;
  double gamma = 0.0;
  std::optional<double> kappa;            // symmetric or subordinator normalization
  std::optional<double> prop1;            // closed-form constant, solved regimes
  std::optional<double> lower_bound;      // alpha < 2, p >= 1
  std::optional<double> big_d;            // symmetric, alpha < 2 < ... p > alpha
  std::optional<double> small_d;          // symmetric, alpha < 2
  std::optional<CpPrime> cp;              // p > 2
  std::optional<GaussianConstants> gaussian;  // alpha = 2
};

ConstantsReport constants_report(const StableLaw& law, double p);

}  // namespace smallball
