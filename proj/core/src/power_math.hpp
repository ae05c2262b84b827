#pragma once

#include <cmath>
#include <limits>

namespace bellmax::detail {

// Integral of t^e over (a, b], 0 <= a <= b. Returns +inf when the integral
// diverges at t = 0.
inline double power_integral(double a, double b, double e) {
  if (!(b > a)) return 0.0;
  const double k = e + 1.0;
  if (a == 0.0) {
    if (k <= 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(b, k) / k;
  }
  const double log_ratio = std::log(b / a);
  if (k == 0.0) return log_ratio;
  // a^k (e^{k ln(b/a)} - 1) / k keeps precision when k is small.
  return std::pow(a, k) * std::expm1(k * log_ratio) / k;
}

}  // namespace bellmax::detail
