#pragma once

#include <cstddef>
#include <string>

namespace mstsinr::kern {

// Dense geometry/attenuation inner loops, with a scalar reference
// implementation and an AVX2 variant selected at runtime. Every variant of a
// kernel performs the identical per-element operation sequence using only
// correctly-rounded operations (mul, add, div, sqrt, and per-lane libm pow),
// so outputs are bit-identical across backends; the equivalence tests assert
// exact equality. That property keeps simulation traces independent of the
// host the binary happens to run on.
enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_supported(Backend b);
// Throws std::invalid_argument if the backend is not supported on this host.
void set_backend(Backend b);
std::string backend_name(Backend b);

// out[i] = (xs[i]-qx)^2 + (ys[i]-qy)^2
void squared_dists(const double* xs, const double* ys, std::size_t n,
                   double qx, double qy, double* out);

// out[i] = power / d2[i]^(alpha/2), the received power at squared distance
// d2[i] from a sender transmitting at `power`. For integral alpha the power
// d2^(alpha/2) is built from mul/sqrt only; otherwise each element uses
// std::pow(d2, alpha/2).
void received_powers(const double* d2, std::size_t n, double alpha,
                     double power, double* out);

// Number of i with (xs[i]-qx)^2 + (ys[i]-qy)^2 <= r2.
std::size_t count_within(const double* xs, const double* ys, std::size_t n,
                         double qx, double qy, double r2);

// Min and max squared distance over all unordered pairs; n >= 2.
void minmax_pair_dist2(const double* xs, const double* ys, std::size_t n,
                       double* min_d2, double* max_d2);

// Scalar convenience wrapper for a single element (always the reference
// sequence, identical to received_powers on a length-1 array).
double received_power_one(double d2, double alpha, double power);

}  // namespace mstsinr::kern
