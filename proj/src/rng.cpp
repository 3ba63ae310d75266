#include "smallball/rng.hpp"

namespace smallball {

namespace {

constexpr std::uint32_t kW32A = 0x9E3779B9u;
constexpr std::uint32_t kW32B = 0xBB67AE85u;
constexpr std::uint32_t kM4x32A = 0xD2511F53u;
constexpr std::uint32_t kM4x32B = 0xCD9E8D57u;

inline void one_round(std::uint32_t c[4], const std::uint32_t k[2]) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kM4x32A) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kM4x32B) * c[2];
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t r0 = hi1 ^ c[1] ^ k[0];
  const std::uint32_t r1 = lo1;
  const std::uint32_t r2 = hi0 ^ c[3] ^ k[1];
  const std::uint32_t r3 = lo0;
  c[0] = r0;
  c[1] = r1;
  c[2] = r2;
  c[3] = r3;
}

}  // namespace

PhiloxBlock philox4x32(std::uint64_t seed, std::uint64_t stream, std::uint64_t block) {
  PhiloxBlock out;
  out.w[0] = static_cast<std::uint32_t>(block);
  out.w[1] = static_cast<std::uint32_t>(block >> 32);
  out.w[2] = static_cast<std::uint32_t>(stream);
  out.w[3] = static_cast<std::uint32_t>(stream >> 32);
  std::uint32_t key[2] = {static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32)};
  for (int i = 0; i < 10; ++i) {
    one_round(out.w, key);
    if (i < 9) {
      key[0] += kW32A;
      key[1] += kW32B;
    }
  }
  return out;
}

std::uint64_t RngStream::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("poisson: mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  if (mean < 10.0) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = uniform_pos();
    while (prod > limit) {
      ++k;
      prod *= uniform_pos();
    }
    return k;
  }
  // PTRS (Hoermann 1993), exact for mean >= 10.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform_pos();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        kf * log_mean - mean - std::lgamma(kf + 1.0))
      return static_cast<std::uint64_t>(kf);
  }
}

}  // namespace smallball
