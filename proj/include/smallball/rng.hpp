#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace smallball {

// Counter-based generator (Philox4x32-10, Salmon et al. SC 2011).
//
// Every draw is a pure function of (master seed, stream id, block index), so a
// run that assigns one stream per Monte Carlo replicate produces bitwise
// identical results no matter how replicates are scheduled across threads.
struct PhiloxBlock {
  std::uint32_t w[4];
};

PhiloxBlock philox4x32(std::uint64_t seed, std::uint64_t stream, std::uint64_t block);

// One substream: sequential draws from blocks (seed, stream, 0), (seed, stream, 1), ...
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream), block_(0), pos_(4), has_spare_(false), spare_(0.0) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buf_.w[pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  // Uniform on [0,1), 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0,1); safe as argument of log() and pow(.,-1/a).
  double uniform_pos() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the second variate of each pair is cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  // Exponential(1).
  double exponential() { return -std::log(uniform_pos()); }

  // Exact Poisson: product-of-uniforms inversion for small means,
  // Hoermann's PTRS transformed rejection for large ones.
  std::uint64_t poisson(double mean);

 private:
  void refill() {
    buf_ = philox4x32(seed_, stream_, block_);
    ++block_;
    pos_ = 0;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_;
  PhiloxBlock buf_{};
  int pos_;
  bool has_spare_;
  double spare_;
};

}  // namespace smallball
