#pragma once

#include <cstddef>

// Backend entry points wired up by the dispatcher. The AVX2 symbols exist on
// every build of this translation set; whether they are safe to call is a
// runtime cpuid question answered in kernels_dispatch.cpp.

namespace mstsinr::kern::impl {

void squared_dists_scalar(const double* xs, const double* ys, std::size_t n,
                          double qx, double qy, double* out);
void received_powers_scalar(const double* d2, std::size_t n, double alpha,
                            double power, double* out);
std::size_t count_within_scalar(const double* xs, const double* ys, std::size_t n,
                                double qx, double qy, double r2);
void minmax_pair_dist2_scalar(const double* xs, const double* ys, std::size_t n,
                              double* min_d2, double* max_d2);

#if defined(__x86_64__) || defined(_M_X64)
#define MSTSINR_HAVE_AVX2_BUILD 1
void squared_dists_avx2(const double* xs, const double* ys, std::size_t n,
                        double qx, double qy, double* out);
void received_powers_avx2(const double* d2, std::size_t n, double alpha,
                          double power, double* out);
std::size_t count_within_avx2(const double* xs, const double* ys, std::size_t n,
                              double qx, double qy, double r2);
void minmax_pair_dist2_avx2(const double* xs, const double* ys, std::size_t n,
                            double* min_d2, double* max_d2);
#endif

}  // namespace mstsinr::kern::impl
