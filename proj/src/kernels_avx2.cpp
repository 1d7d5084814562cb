#include "kernels_impl.hpp"

#if defined(MSTSINR_HAVE_AVX2_BUILD)

#include <immintrin.h>

#include <bit>
#include <limits>

#include "kernels_detail.hpp"

// AVX2 variants. Only correctly-rounded vector operations are used (mul, add,
// sub, div, sqrt, compares); no FMA and no reassociating reductions, so every
// lane computes exactly what the scalar reference computes for that element.
// Elements needing libm pow (non-integral alpha) go through the scalar
// sequence per lane.

namespace mstsinr::kern::impl {

using detail::element_d2;
using detail::element_received_power;
using detail::plan_alpha;

namespace {

inline __m256d d2_vec(const double* xs, const double* ys, std::size_t i,
                      __m256d qx, __m256d qy) {
  const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), qx);
  const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), qy);
  return _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
}

}  // namespace

void squared_dists_avx2(const double* xs, const double* ys, std::size_t n,
                        double qx, double qy, double* out) {
  const __m256d vqx = _mm256_set1_pd(qx);
  const __m256d vqy = _mm256_set1_pd(qy);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, d2_vec(xs, ys, i, vqx, vqy));
  for (; i < n; ++i) out[i] = element_d2(xs[i], ys[i], qx, qy);
}

void received_powers_avx2(const double* d2, std::size_t n, double alpha,
                          double power, double* out) {
  const auto plan = plan_alpha(alpha);
  if (!plan.integral) {
    // pow-per-element path: vectorizing would need a vector pow with
    // different rounding than libm, breaking cross-backend equality.
    for (std::size_t i = 0; i < n; ++i) out[i] = element_received_power(d2[i], plan, power);
    return;
  }
  const __m256d vp = _mm256_set1_pd(power);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(d2 + i);
    __m256d t = one;
    if (plan.half_int > 0) {
      t = v;
      for (int j = 1; j < plan.half_int; ++j) t = _mm256_mul_pd(t, v);
    }
    if (plan.has_sqrt) t = _mm256_mul_pd(t, _mm256_sqrt_pd(v));
    _mm256_storeu_pd(out + i, _mm256_div_pd(vp, t));
  }
  for (; i < n; ++i) out[i] = element_received_power(d2[i], plan, power);
}

std::size_t count_within_avx2(const double* xs, const double* ys, std::size_t n,
                              double qx, double qy, double r2) {
  const __m256d vqx = _mm256_set1_pd(qx);
  const __m256d vqy = _mm256_set1_pd(qy);
  const __m256d vr2 = _mm256_set1_pd(r2);
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d le = _mm256_cmp_pd(d2_vec(xs, ys, i, vqx, vqy), vr2, _CMP_LE_OQ);
    c += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(_mm256_movemask_pd(le))));
  }
  for (; i < n; ++i) {
    if (element_d2(xs[i], ys[i], qx, qy) <= r2) ++c;
  }
  return c;
}

void minmax_pair_dist2_avx2(const double* xs, const double* ys, std::size_t n,
                            double* min_d2, double* max_d2) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  __m256d vlo = _mm256_set1_pd(lo);
  __m256d vhi = _mm256_setzero_pd();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const __m256d vqx = _mm256_set1_pd(xs[i]);
    const __m256d vqy = _mm256_set1_pd(ys[i]);
    std::size_t j = i + 1;
    for (; j + 4 <= n; j += 4) {
      const __m256d v = d2_vec(xs, ys, j, vqx, vqy);
      vlo = _mm256_min_pd(vlo, v);
      vhi = _mm256_max_pd(vhi, v);
    }
    for (; j < n; ++j) {
      const double d2 = element_d2(xs[j], ys[j], xs[i], ys[i]);
      if (d2 < lo) lo = d2;
      if (d2 > hi) hi = d2;
    }
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vlo);
  for (double v : lanes) {
    if (v < lo) lo = v;
  }
  _mm256_store_pd(lanes, vhi);
  for (double v : lanes) {
    if (v > hi) hi = v;
  }
  *min_d2 = lo;
  *max_d2 = hi;
}

}  // namespace mstsinr::kern::impl

#endif  // MSTSINR_HAVE_AVX2_BUILD
