#include "smallball/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smallball {

double kolmogorov_q(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 0.2) return 1.0;  // Q > 1 - 1e-15 here; avoid a long alternating sum
  double s = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    s += sign * term;
    sign = -sign;
    if (term < 1e-18) break;
  }
  const double q = 2.0 * s;
  return std::min(1.0, std::max(0.0, q));
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double level) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: both samples must be non-empty");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult r;
  r.statistic = d;
  r.scaled = d * std::sqrt(na * nb / (na + nb));
  r.p_value = kolmogorov_q(r.scaled);
  r.level = level;
  r.reject = r.p_value < level;
  return r;
}

WilsonInterval wilson_interval(std::size_t hits, std::size_t n, double z) {
  if (n == 0) throw std::invalid_argument("wilson_interval: n must be positive");
  if (hits > n) throw std::invalid_argument("wilson_interval: hits > n");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  WilsonInterval w;
  w.lo = std::max(0.0, center - half);
  w.hi = std::min(1.0, center + half);
  return w;
}

TailEstimate hill_tail_index(std::vector<double> samples, std::size_t k) {
  if (k == 0 || samples.size() < k + 1)
    throw std::invalid_argument("hill_tail_index: need at least k+1 samples with k >= 1");
  // Partition so that the top k+1 values occupy the front (descending order).
  std::nth_element(samples.begin(), samples.begin() + k, samples.end(), std::greater<double>());
  std::sort(samples.begin(), samples.begin() + k + 1, std::greater<double>());
  const double x_k1 = samples[k];
  if (!(x_k1 > 0.0))
    throw std::invalid_argument("hill_tail_index: order statistic X_(k+1) must be positive");
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += std::log(samples[i] / x_k1);
  const double mean_log = s / static_cast<double>(k);
  TailEstimate t;
  t.alpha_hat = 1.0 / mean_log;
  t.se = t.alpha_hat / std::sqrt(static_cast<double>(k));
  t.k = k;
  t.n = samples.size();
  return t;
}

double brownian_sup_cdf(double eps) {
  if (!(eps > 0.0)) return 0.0;
  constexpr double pi = 3.14159265358979323846264338327950288;
  if (eps < 1.0) {
    // (4/pi) sum_{k>=0} (-1)^k/(2k+1) exp(-(2k+1)^2 pi^2 / (8 eps^2))
    const double q = pi * pi / (8.0 * eps * eps);
    double s = 0.0;
    double sign = 1.0;
    for (int k = 0; k < 400; ++k) {
      const double m = 2.0 * k + 1.0;
      const double term = std::exp(-m * m * q) / m;
      s += sign * term;
      sign = -sign;
      if (term < 1e-300) break;
    }
    return std::min(1.0, std::max(0.0, 4.0 / pi * s));
  }
  // Reflection series: sum_{k in Z} (-1)^k [Phi((2k+1)eps) - Phi((2k-1)eps)].
  const auto phi = [](double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); };
  double s = 0.0;
  for (int k = -60; k <= 60; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double term = phi((2.0 * k + 1.0) * eps) - phi((2.0 * k - 1.0) * eps);
    s += sign * term;
  }
  return std::min(1.0, std::max(0.0, s));
}

}  // namespace smallball
