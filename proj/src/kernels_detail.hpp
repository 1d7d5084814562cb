#pragma once

#include <cmath>
#include <cstddef>

// Shared per-element sequences. Both backends (and the AVX2 tail loop) fold
// down to exactly these operations in this order; any change here changes
// recorded traces, so treat the sequence as part of the on-disk format.

namespace mstsinr::kern::detail {

struct AlphaPlan {
  bool integral = false;
  int half_int = 0;     // floor(alpha / 2) when integral
  bool has_sqrt = false;  // alpha odd when integral
  double half = 0.0;    // alpha / 2 for the pow fallback
};

inline AlphaPlan plan_alpha(double alpha) {
  AlphaPlan p;
  p.half = 0.5 * alpha;
  const double r = std::floor(alpha);
  if (r == alpha && alpha >= 1.0 && alpha <= 64.0) {
    const int k = static_cast<int>(r);
    p.integral = true;
    p.half_int = k / 2;
    p.has_sqrt = (k % 2) != 0;
  }
  return p;
}

// d^alpha written on squared distances: d2^(alpha/2).
inline double element_pow_half(double d2, const AlphaPlan& p) {
  if (!p.integral) return std::pow(d2, p.half);
  double t = 1.0;
  if (p.half_int > 0) {
    t = d2;
    for (int j = 1; j < p.half_int; ++j) t = t * d2;
  }
  if (p.has_sqrt) t = t * std::sqrt(d2);
  return t;
}

inline double element_received_power(double d2, const AlphaPlan& p, double power) {
  return power / element_pow_half(d2, p);
}

inline double element_d2(double x, double y, double qx, double qy) {
  const double dx = x - qx;
  const double dy = y - qy;
  return dx * dx + dy * dy;
}

}  // namespace mstsinr::kern::detail
