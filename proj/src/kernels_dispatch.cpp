#include "mstsinr/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace mstsinr::kern {

namespace {

bool avx2_available() {
#if defined(MSTSINR_HAVE_AVX2_BUILD)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("MSTSINR_KERNEL")) {
    const std::string v(env);
    if (v == "scalar") return Backend::scalar;
    if (v == "avx2" && avx2_available()) return Backend::avx2;
  }
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

Backend& backend_slot() {
  static Backend b = initial_backend();
  return b;
}

}  // namespace

Backend active_backend() { return backend_slot(); }

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return avx2_available();
  }
  return false;
}

void set_backend(Backend b) {
  if (!backend_supported(b)) {
    throw std::invalid_argument("kernel backend not supported on this host: " + backend_name(b));
  }
  backend_slot() = b;
}

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

void squared_dists(const double* xs, const double* ys, std::size_t n,
                   double qx, double qy, double* out) {
#if defined(MSTSINR_HAVE_AVX2_BUILD)
  if (backend_slot() == Backend::avx2) {
    impl::squared_dists_avx2(xs, ys, n, qx, qy, out);
    return;
  }
#endif
  impl::squared_dists_scalar(xs, ys, n, qx, qy, out);
}

void received_powers(const double* d2, std::size_t n, double alpha,
                     double power, double* out) {
#if defined(MSTSINR_HAVE_AVX2_BUILD)
  if (backend_slot() == Backend::avx2) {
    impl::received_powers_avx2(d2, n, alpha, power, out);
    return;
  }
#endif
  impl::received_powers_scalar(d2, n, alpha, power, out);
}

std::size_t count_within(const double* xs, const double* ys, std::size_t n,
                         double qx, double qy, double r2) {
#if defined(MSTSINR_HAVE_AVX2_BUILD)
  if (backend_slot() == Backend::avx2) return impl::count_within_avx2(xs, ys, n, qx, qy, r2);
#endif
  return impl::count_within_scalar(xs, ys, n, qx, qy, r2);
}

void minmax_pair_dist2(const double* xs, const double* ys, std::size_t n,
                       double* min_d2, double* max_d2) {
#if defined(MSTSINR_HAVE_AVX2_BUILD)
  if (backend_slot() == Backend::avx2) {
    impl::minmax_pair_dist2_avx2(xs, ys, n, min_d2, max_d2);
    return;
  }
#endif
  impl::minmax_pair_dist2_scalar(xs, ys, n, min_d2, max_d2);
}

double received_power_one(double d2, double alpha, double power) {
  double out;
  impl::received_powers_scalar(&d2, 1, alpha, power, &out);
  return out;
}

}  // namespace mstsinr::kern
