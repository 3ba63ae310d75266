#pragma once

#include <cstddef>
#include <vector>

namespace smallball {

struct KsResult {
  double statistic;   // sup |F_a - F_b|
  double scaled;      // statistic * sqrt(n*m/(n+m))
  double p_value;     // asymptotic Kolmogorov tail
  double level;
  bool reject;
};

// Two-sample Kolmogorov-Smirnov test with the asymptotic null distribution.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double level = 0.001);

// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

struct WilsonInterval {
  double lo;
  double hi;
};

// Wilson score interval for a binomial proportion at normal quantile z.
WilsonInterval wilson_interval(std::size_t hits, std::size_t n, double z);

struct TailEstimate {
  double alpha_hat;   // estimated tail exponent
  double se;          // ~ alpha_hat / sqrt(k)
  std::size_t k;      // order statistics used
  std::size_t n;
};

// Hill estimator of the tail exponent from the top-k order statistics.
TailEstimate hill_tail_index(std::vector<double> samples, std::size_t k);

// P[ sup_{0<=t<=1} |W_t| <= eps ] for a standard Brownian motion.
// Theta series for small eps, reflection series in the erf form for large eps.
double brownian_sup_cdf(double eps);

}  // namespace smallball
