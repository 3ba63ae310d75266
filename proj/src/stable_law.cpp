#include "smallball/stable_law.hpp"

#include <cmath>
#include <stdexcept>

namespace smallball {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Standard Chambers-Mallows-Stuck draw: strictly stable X with
// E exp(i t X) = exp(-|t|^alpha (1 - i beta tan(pi alpha/2) sgn t)), unit scale.
// The beta = 0 branch also covers the Cauchy case alpha = 1.
double cms_standard(double alpha, double beta, RngStream& g) {
  const double v = kPi * (g.uniform_pos() - 0.5);
  const double w = g.exponential();
  if (beta == 0.0) {
    const double e = (1.0 - alpha) / alpha;
    return std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
           std::pow(std::cos((1.0 - alpha) * v) / w, e);
  }
  const double ta = std::tan(0.5 * kPi * alpha);
  const double b = std::atan(beta * ta) / alpha;
  const double s = std::pow(1.0 + beta * beta * ta * ta, 0.5 / alpha);
  const double e = (1.0 - alpha) / alpha;
  return s * std::sin(alpha * (v + b)) / std::pow(std::cos(v), 1.0 / alpha) *
         std::pow(std::cos(v - alpha * (v + b)) / w, e);
}

}  // namespace

bool StableLaw::symmetric() const {
  if (alpha == 2.0) return true;
  return c_minus == c_plus && drift == 0.0;
}

bool StableLaw::is_subordinator_abs() const {
  return alpha < 1.0 && (c_minus == 0.0 || c_plus == 0.0);
}

double StableLaw::kappa_symmetric() const {
  if (alpha == 2.0) return 0.5 * gauss_scale * gauss_scale;
  if (!symmetric())
    throw std::invalid_argument(
        "kappa_symmetric: Fourier normalization defined for symmetric laws only");
  return std::pow(cms_scale, alpha);
}

double StableLaw::kappa_laplace() const {
  if (!is_subordinator_abs())
    throw std::invalid_argument(
        "kappa_laplace: Laplace normalization defined for one-sided laws with alpha < 1");
  return (c_minus + c_plus) * std::tgamma(1.0 - alpha) / alpha;
}

StableLaw from_levy(double alpha, double c_minus, double c_plus, double drift) {
  require(alpha > 0.0 && alpha < 2.0, "from_levy: alpha must lie in (0,2)");
  require(c_minus >= 0.0 && c_plus >= 0.0, "from_levy: jump intensities must be >= 0");
  require(c_minus + c_plus > 0.0, "from_levy: jump measure must not vanish");
  StableLaw law;
  law.alpha = alpha;
  law.c_minus = c_minus;
  law.c_plus = c_plus;
  if (alpha == 1.0) {
    require(c_minus == c_plus,
            "from_levy: strict stability at alpha = 1 needs a symmetric jump measure");
    law.drift = drift;
  } else {
    require(drift == 0.0,
            "from_levy: drift is determined by strict stability for alpha != 1");
    law.drift = (c_plus - c_minus) / (1.0 - alpha);
  }
  law.beta_skew = (c_plus - c_minus) / (c_plus + c_minus);
  if (alpha == 1.0) {
    law.cms_scale = (c_minus + c_plus) * kPi / 2.0;
  } else {
    // sigma^alpha = (c_-+c_+) Gamma(2-alpha) cos(pi alpha/2) / (alpha (1-alpha)),
    // positive on both sides of alpha = 1.
    const double sa = (c_minus + c_plus) * std::tgamma(2.0 - alpha) *
                      std::cos(0.5 * kPi * alpha) / (alpha * (1.0 - alpha));
    law.cms_scale = std::pow(sa, 1.0 / alpha);
  }
  return law;
}

StableLaw from_symmetric(double alpha, double kappa) {
  require(alpha > 0.0 && alpha <= 2.0, "from_symmetric: alpha must lie in (0,2]");
  require(kappa > 0.0, "from_symmetric: kappa must be positive");
  if (alpha == 2.0) {
    StableLaw law;
    law.alpha = 2.0;
    law.gauss_scale = std::sqrt(2.0 * kappa);
    return law;
  }
  const double c =
      alpha * std::tgamma(alpha) * std::sin(0.5 * kPi * alpha) / kPi * kappa;
  return from_levy(alpha, c, c);
}

StableLaw from_subordinator(double alpha, double kappa) {
  require(alpha > 0.0 && alpha < 1.0, "from_subordinator: alpha must lie in (0,1)");
  require(kappa > 0.0, "from_subordinator: kappa must be positive");
  const double c_plus = alpha * kappa / std::tgamma(1.0 - alpha);
  return from_levy(alpha, 0.0, c_plus);
}

SubordinatorLaw sp_law(const StableLaw& law, double p) {
  require(law.alpha < 2.0, "sp_law: the jump sum needs a jump part (alpha < 2)");
  require(p > law.alpha, "sp_law: requires p > alpha");
  SubordinatorLaw s;
  s.alpha = law.alpha / p;
  s.kappa = (law.c_minus + law.c_plus) / law.alpha * std::tgamma(1.0 - law.alpha / p);
  return s;
}

double sample_stable(const StableLaw& law, double t, RngStream& g) {
  require(t > 0.0, "sample_stable: t must be positive");
  if (law.alpha == 2.0) return law.gauss_scale * std::sqrt(t) * g.gaussian();
  if (law.alpha == 1.0)
    return t * (law.cms_scale * cms_standard(1.0, 0.0, g) + law.drift);
  const double scale = (t == 1.0) ? 1.0 : std::pow(t, 1.0 / law.alpha);
  return scale * law.cms_scale * cms_standard(law.alpha, law.beta_skew, g);
}

double sample_one_sided(double alpha, double kappa, RngStream& g) {
  require(alpha > 0.0 && alpha < 1.0, "sample_one_sided: alpha must lie in (0,1)");
  require(kappa > 0.0, "sample_one_sided: kappa must be positive");
  const double scale = std::pow(kappa * std::cos(0.5 * kPi * alpha), 1.0 / alpha);
  return scale * cms_standard(alpha, 1.0, g);
}

double levy_cdf(double kappa, double x) {
  if (!(kappa > 0.0)) throw std::invalid_argument("levy_cdf: kappa must be positive");
  if (x <= 0.0) return 0.0;
  return std::erfc(0.5 * kappa / std::sqrt(x));
}

double gaussian_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); }

}  // namespace smallball
