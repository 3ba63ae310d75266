#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "smallball/rng.hpp"
#include "smallball/stable_law.hpp"
#include "smallball/stats.hpp"

using namespace smallball;

namespace {

// Mean and standard error of f(Z_1) over n exact draws.
template <typename F>
std::pair<double, double> mc_mean(const StableLaw& law, F f, int n, RngStream& g) {
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = f(sample_stable(law, 1.0, g));
    s += v;
    s2 += v * v;
  }
  const double mean = s / n;
  const double var = (s2 - n * mean * mean) / (n - 1);
  return {mean, std::sqrt(var / n)};
}

}  // namespace

TEST_CASE("symmetric construction: intensities carry the Fourier normalization") {
  // For E exp(ilZ_1) = exp(-|l|^alpha), each side of the jump measure has
  // intensity alpha Gamma(alpha) sin(pi alpha/2) / pi; at alpha = 1/2 this is
  // 1 / (2 integral_0^inf (1-cos v) v^{-3/2} dv), computed independently.
  const StableLaw law = from_symmetric(0.5, 1.0);
  CHECK(law.c_plus == doctest::Approx(0.19947114020071635).epsilon(1e-14));
  CHECK(law.c_minus == doctest::Approx(law.c_plus).epsilon(1e-15));
  CHECK(law.symmetric());
  CHECK_FALSE(law.is_subordinator_abs());
  CHECK(law.beta_skew == doctest::Approx(0.0));

  // alpha = 1: per-side intensity kappa/pi.
  const StableLaw cauchy = from_symmetric(1.0, 2.0);
  CHECK(cauchy.c_plus == doctest::Approx(2.0 / 3.14159265358979323846).epsilon(1e-14));
}

TEST_CASE("subordinator construction: one-sided intensity and flags") {
  const StableLaw law = from_subordinator(0.5, 1.0);
  CHECK(law.c_plus == doctest::Approx(0.28209479177387814).epsilon(1e-14));  // alpha*kappa/Gamma(1-alpha)
  CHECK(law.c_minus == doctest::Approx(0.0));
  CHECK(law.is_subordinator_abs());
  CHECK_FALSE(law.symmetric());
  CHECK(law.beta_skew == doctest::Approx(1.0));
}

TEST_CASE("kappa round trips through the jump intensities") {
  for (double alpha : {0.3, 0.7, 1.0, 1.4, 1.9}) {
    const StableLaw law = from_symmetric(alpha, 0.8);
    CHECK(law.kappa_symmetric() == doctest::Approx(0.8).epsilon(1e-12));
  }
  for (double alpha : {0.2, 0.5, 0.9}) {
    const StableLaw law = from_subordinator(alpha, 1.7);
    CHECK(law.kappa_laplace() == doctest::Approx(1.7).epsilon(1e-12));
  }
  const StableLaw gauss = from_symmetric(2.0, 0.5);
  CHECK(gauss.gauss_scale == doctest::Approx(1.0).epsilon(1e-14));  // kappa = a^2/2
  CHECK(gauss.kappa_symmetric() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("power jump-sum law: closed form in two pinned cases") {
  // Symmetric Cauchy, p = 2: S^2 is 1/2-stable with kappa = 2/sqrt(pi).
  const SubordinatorLaw s1 = sp_law(from_symmetric(1.0, 1.0), 2.0);
  CHECK(s1.alpha == doctest::Approx(0.5));
  CHECK(s1.kappa == doctest::Approx(1.1283791670955126).epsilon(1e-14));
  // 1/2-subordinator, p = 1: the jump sum is the process itself.
  const SubordinatorLaw s2 = sp_law(from_subordinator(0.5, 1.0), 1.0);
  CHECK(s2.alpha == doctest::Approx(0.5));
  CHECK(s2.kappa == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sampler matches the characteristic function") {
  RngStream g(31, 0);
  for (double alpha : {0.6, 1.0, 1.5}) {
    const StableLaw law = from_symmetric(alpha, 1.0);
    auto [mean, se] = mc_mean(
        law, [](double z) { return std::cos(z); }, 200000, g);
    CHECK(std::fabs(mean - std::exp(-1.0)) < 3.0 * se);
  }
}

TEST_CASE("sampler matches the Laplace transform of a subordinator") {
  RngStream g(32, 0);
  for (double alpha : {0.3, 0.5, 0.8}) {
    const StableLaw law = from_subordinator(alpha, 1.0);
    auto [mean, se] = mc_mean(
        law, [](double z) { return std::exp(-z); }, 200000, g);
    CHECK(std::fabs(mean - std::exp(-1.0)) < 3.0 * se);
    // positivity is structural, not statistical
    for (int i = 0; i < 1000; ++i) CHECK(sample_stable(law, 1.0, g) > 0.0);
  }
}

TEST_CASE("one-sided sampler agrees with the law overload") {
  const SubordinatorLaw s{0.4, 1.3};
  RngStream g1(33, 5), g2(33, 5);
  for (int i = 0; i < 50; ++i)
    CHECK(sample_one_sided(s, g1) == sample_one_sided(0.4, 1.3, g2));
}

TEST_CASE("self-similarity: Z_t =d t^{1/alpha} Z_1") {
  RngStream g(34, 0);
  const StableLaw law = from_symmetric(1.3, 1.0);
  std::vector<double> at_t, scaled;
  const double t = 0.37;
  for (int i = 0; i < 20000; ++i) {
    at_t.push_back(sample_stable(law, t, g));
    scaled.push_back(std::pow(t, 1.0 / 1.3) * sample_stable(law, 1.0, g));
  }
  CHECK_FALSE(ks_two_sample(at_t, scaled).reject);
}

TEST_CASE("half-stable subordinator sampler against the exact cdf") {
  // E exp(-l Z) = exp(-sqrt(l)): P[Z <= x] = erfc(1/(2 sqrt(x))).
  CHECK(levy_cdf(1.0, 0.05) == doctest::Approx(0.0015654022580025488).epsilon(1e-12));
  RngStream g(35, 0);
  const StableLaw law = from_subordinator(0.5, 1.0);
  const int n = 200000;
  int hits = 0;
  for (int i = 0; i < n; ++i)
    if (sample_stable(law, 1.0, g) <= 0.05) ++hits;
  const double p0 = 0.0015654022580025488;
  const double se = std::sqrt(p0 * (1.0 - p0) / n);
  CHECK(std::fabs(static_cast<double>(hits) / n - p0) < 3.0 * se);
}

TEST_CASE("gaussian endpoint samples a * W_1") {
  RngStream g(36, 0);
  const StableLaw law = from_symmetric(2.0, 2.0);  // a = 2
  const int n = 100000;
  int below = 0;
  for (int i = 0; i < n; ++i)
    if (sample_stable(law, 1.0, g) <= 1.0) ++below;
  const double p0 = gaussian_cdf(0.5);
  const double se = std::sqrt(p0 * (1.0 - p0) / n);
  CHECK(std::fabs(static_cast<double>(below) / n - p0) < 3.0 * se);
}

TEST_CASE("construction rejects out-of-range parameters") {
  CHECK_THROWS_AS((void)from_symmetric(2.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)from_symmetric(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)from_symmetric(1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)from_subordinator(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)from_subordinator(1.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)from_levy(2.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)from_levy(1.5, -0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)from_levy(1.5, 0.0, 0.0), std::invalid_argument);
  // strictness: alpha != 1 forbids a free drift, alpha = 1 forbids asymmetry
  CHECK_THROWS_AS((void)from_levy(1.5, 1.0, 1.0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS((void)from_levy(1.0, 0.5, 1.0), std::invalid_argument);
  CHECK_NOTHROW((void)from_levy(1.0, 0.5, 0.5, 3.0));
}

TEST_CASE("general construction reduces to the symmetric one") {
  const StableLaw sym = from_symmetric(1.5, 1.0);
  const StableLaw gen = from_levy(1.5, sym.c_minus, sym.c_plus);
  CHECK(gen.kappa_symmetric() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gen.cms_scale == doctest::Approx(sym.cms_scale).epsilon(1e-14));
}
