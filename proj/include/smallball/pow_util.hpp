#pragma once

#include <cmath>

namespace smallball {

// |x|^p with fast paths for the exponents that dominate the hot loops.
// Used consistently by every p-th power sum so that structurally identical
// quantities agree bitwise.
inline double pow_abs(double x, double p) {
  const double a = std::fabs(x);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  if (p == 4.0) return (a * a) * (a * a);
  if (p == 0.5) return std::sqrt(a);
  if (p == 1.5) return a * std::sqrt(a);
  if (p == 2.5) return a * a * std::sqrt(a);
  return std::pow(a, p);
}

// Compensated (Kahan) accumulator for long sums of nonnegative terms.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace smallball
