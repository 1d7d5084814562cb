#include <limits>

#include "kernels_detail.hpp"
#include "kernels_impl.hpp"

namespace mstsinr::kern::impl {

using detail::element_d2;
using detail::element_received_power;
using detail::plan_alpha;

void squared_dists_scalar(const double* xs, const double* ys, std::size_t n,
                          double qx, double qy, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = element_d2(xs[i], ys[i], qx, qy);
}

void received_powers_scalar(const double* d2, std::size_t n, double alpha,
                            double power, double* out) {
  const auto plan = plan_alpha(alpha);
  for (std::size_t i = 0; i < n; ++i) out[i] = element_received_power(d2[i], plan, power);
}

std::size_t count_within_scalar(const double* xs, const double* ys, std::size_t n,
                                double qx, double qy, double r2) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (element_d2(xs[i], ys[i], qx, qy) <= r2) ++c;
  }
  return c;
}

void minmax_pair_dist2_scalar(const double* xs, const double* ys, std::size_t n,
                              double* min_d2, double* max_d2) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d2 = element_d2(xs[j], ys[j], xs[i], ys[i]);
      if (d2 < lo) lo = d2;
      if (d2 > hi) hi = d2;
    }
  }
  *min_d2 = lo;
  *max_d2 = hi;
}

}  // namespace mstsinr::kern::impl
