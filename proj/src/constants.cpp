#include "smallball/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace smallball {

namespace {

constexpr double kPi = 3.14159265358979323846;

double finite_or_throw(double v, const char* who) {
  if (!std::isfinite(v) || !(v > 0.0))
    throw std::domain_error(std::string(who) + ": value diverges at this parameter boundary");
  return v;
}

// log of ((c/p) Gamma(1 - a/p))^{p/(p-a)} evaluated stably.
double log_kap_power(double a, double p, double c) {
  return (p / (p - a)) * (std::log(c / p) + std::lgamma(1.0 - a / p));
}

// Inner objective of cp_prime at exponent p, in log space:
// (2p/(a(p-2))) * log R(a).
double cp_objective(double a, double p) {
  const double logR = std::lgamma(0.5 * (1.0 + a)) + std::lgamma(1.0 - a / p) -
                      std::lgamma(0.5) - std::lgamma(1.0 - 0.5 * a);
  return (2.0 * p / (a * (p - 2.0))) * logR;
}

}  // namespace

const char* to_string(ConstantsBranch b) {
  switch (b) {
    case ConstantsBranch::subordinator_p_gt_1:
      return "subordinator_p_gt_1";
    case ConstantsBranch::p_le_1:
      return "p_le_1";
    case ConstantsBranch::general:
      return "general";
  }
  return "general";
}

double gamma_exponent(double alpha, double p, bool abs_subordinator) {
  if (abs_subordinator && p > 1.0) {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("gamma_exponent: subordinator branch needs alpha in (0,1)");
    return alpha / (1.0 - alpha);
  }
  if (!(alpha > 0.0 && p > alpha))
    throw std::invalid_argument("gamma_exponent: requires p > alpha");
  return p * alpha / (p - alpha);
}

double prop1_constant(const StableLaw& law, double p) {
  const double a = law.alpha;
  if (a < p && p <= 1.0) {
    const double c = law.c_minus + law.c_plus;
    const double v = ((p - a) / a) * std::exp(log_kap_power(a, p, c));
    return finite_or_throw(v, "prop1_constant");
  }
  if (law.is_subordinator_abs() && p > 1.0) {
    const double c = law.c_minus + law.c_plus;  // single-sided mass
    const double v =
        (1.0 / a - 1.0) * std::exp((std::log(c) + std::lgamma(1.0 - a)) / (1.0 - a));
    return finite_or_throw(v, "prop1_constant");
  }
  throw std::invalid_argument(
      "prop1_constant: needs alpha < p <= 1, or |Z| a subordinator with p > 1");
}

double lower_bound_kap(const StableLaw& law, double p) {
  const double a = law.alpha;
  if (!(a < 2.0)) throw std::invalid_argument("lower_bound_kap: requires alpha < 2");
  if (!(p >= 1.0 && p > a))
    throw std::invalid_argument("lower_bound_kap: requires p >= 1 and p > alpha");
  const double c = law.c_minus + law.c_plus;
  const double v = ((p - a) / a) * std::exp(log_kap_power(a, p, c));
  return finite_or_throw(v, "lower_bound_kap");
}

double D_alpha_p(double alpha, double p, double kappa) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("D_alpha_p: requires alpha in (0,2)");
  if (!(p > alpha)) throw std::invalid_argument("D_alpha_p: requires p > alpha");
  if (!(kappa > 0.0)) throw std::invalid_argument("D_alpha_p: requires kappa > 0");
  const double e = p / (p - alpha);
  const double log_inner = std::log(2.0 * alpha / (p * kPi)) + std::lgamma(alpha) +
                           std::log(std::sin(0.5 * kPi * alpha)) +
                           std::lgamma(1.0 - alpha / p) + std::log(kappa);
  const double v = ((p - alpha) / alpha) * std::exp(e * log_inner);
  return finite_or_throw(v, "D_alpha_p");
}

double d_alpha(double alpha, double kappa) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("d_alpha: requires alpha in (0,2)");
  if (!(kappa > 0.0)) throw std::invalid_argument("d_alpha: requires kappa > 0");
  const double v = 0.5 * (2.0 - alpha) *
                   std::exp((alpha * std::log(alpha) + 2.0 * std::log(kappa)) / (2.0 - alpha));
  return finite_or_throw(v, "d_alpha");
}

double max_formula(double q, double r, double a, double b) {
  if (!(1.0 < q && q < r))
    throw std::invalid_argument("max_formula: requires 1 < q < r");
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("max_formula: requires a, b > 0");
  const double v = (1.0 / q - 1.0 / r) *
                   std::exp((r / (r - q)) * std::log(q * a) + (q / (q - r)) * std::log(r * b));
  return finite_or_throw(v, "max_formula");
}

CpPrime cp_prime(double p) {
  if (!(p > 2.0)) throw std::invalid_argument("cp_prime: requires p > 2");
  constexpr double kDelta = 1e-6;
  const double lo = kDelta, hi = 2.0 - kDelta;

  // Coarse scan to bracket the global maximum.
  constexpr int kScan = 200;
  double best_a = lo, best_f = cp_objective(lo, p);
  for (int i = 1; i <= kScan; ++i) {
    const double a = lo + (hi - lo) * static_cast<double>(i) / kScan;
    const double f = cp_objective(a, p);
    if (f > best_f) {
      best_f = f;
      best_a = a;
    }
  }
  double gl = std::max(lo, best_a - (hi - lo) / kScan);
  double gr = std::min(hi, best_a + (hi - lo) / kScan);

  // Golden-section refinement.
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = gr - kInvPhi * (gr - gl);
  double x2 = gl + kInvPhi * (gr - gl);
  double f1 = cp_objective(x1, p);
  double f2 = cp_objective(x2, p);
  while (gr - gl > 1e-10) {
    if (f1 < f2) {
      gl = x1;
      x1 = x2;
      f1 = f2;
      x2 = gl + kInvPhi * (gr - gl);
      f2 = cp_objective(x2, p);
    } else {
      gr = x2;
      x2 = x1;
      f2 = f1;
      x1 = gr - kInvPhi * (gr - gl);
      f1 = cp_objective(x1, p);
    }
  }
  const double a_star = 0.5 * (gl + gr);
  const double f_star = cp_objective(a_star, p);

  CpPrime out;
  out.argmax_alpha = a_star;
  out.value = ((p - 2.0) / p) * std::exp((2.0 / (2.0 - p)) * std::log(p) +
                                         ((p + 2.0) / (p - 2.0)) * std::log(2.0) + f_star);
  finite_or_throw(out.value, "cp_prime");
  return out;
}

GaussianConstants gaussian_constants(double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("gaussian_constants: requires kappa > 0");
  GaussianConstants g;
  g.sup_constant = kPi * kPi / 8.0;
  g.osc_constant = kPi * kPi / 2.0;
  g.gamma2 = 0.25 * kappa;
  g.note =
      "sup/oscillation constants are for the standard Brownian normalization "
      "(kappa = 1/2); gamma2 carries the kappa dependence";
  return g;
}

ConstantsReport constants_report(const StableLaw& law, double p) {
  const double a = law.alpha;
  const bool sub = law.is_subordinator_abs();
  ConstantsReport r;
  r.alpha = a;
  r.p = p;
  r.gamma = gamma_exponent(a, p, sub);
  if (sub && p > 1.0)
    r.branch = ConstantsBranch::subordinator_p_gt_1;
  else if (p <= 1.0)
    r.branch = ConstantsBranch::p_le_1;
  else
    r.branch = ConstantsBranch::general;

  if ((a < p && p <= 1.0) || (sub && p > 1.0)) r.prop1 = prop1_constant(law, p);
  if (a < 2.0 && p >= 1.0 && p > a) r.lower_bound = lower_bound_kap(law, p);
  if (law.symmetric()) {
    r.kappa = law.kappa_symmetric();
    if (a < 2.0) {
      r.small_d = d_alpha(a, *r.kappa);
      if (p > a) r.big_d = D_alpha_p(a, p, *r.kappa);
    } else {
      r.gaussian = gaussian_constants(*r.kappa);
    }
  } else if (sub) {
    r.kappa = law.kappa_laplace();
  }
  if (p > 2.0) r.cp = cp_prime(p);
  return r;
}

}  // namespace smallball
