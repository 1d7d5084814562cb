#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mstsinr {

using NodeId = std::uint32_t;

// Absolute tolerance for geometric verification comparisons (normalization
// checks, cost comparisons, audit inequalities). Graph adjacency and slot
// decisions are exact floating-point compares so that simulation and audit
// can never disagree.
inline constexpr double kGeomTol = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double dist2(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Physical-layer parameters. A transmission is decoded iff the ratio of
// received signal power to (sum of all other received powers + noise) is at
// least beta. Power attenuates with distance as 1/d^alpha.
struct SinrParams {
  double alpha = 3.0;   // path-loss exponent, must exceed 2
  double beta = 2.0;    // SINR decode threshold, must exceed 1
  double noise = 1.0;   // ambient noise floor, positive
  double p_max = 0.0;   // node transmit power cap, positive
  double conn_c = 2.0;  // connectivity margin: the disk graph at range
                        // r_max/conn_c must be connected
};

// Random-access broadcast tuning. gamma scales the acceptance radius
// (receivers ignore senders farther than gamma * r_b), gamma_prime scales the
// interference diagnostic threshold, rounds_factor scales slot budgets.
struct BroadcastConfig {
  double gamma = 4.0;
  double gamma_prime = 2.0;
  double rounds_factor = 8.0;
  double c_prime = 0.0;  // power constant for protocol transmissions;
                         // 0 selects the default 2 * noise * beta
};

struct Instance {
  std::vector<Point> nodes;  // normalized: min pairwise distance is 1
  SinrParams params;
  BroadcastConfig broadcast;
  std::uint64_t seed = 0;

  std::size_t n() const { return nodes.size(); }
};

// Quantities derived from an instance once and shared by protocols, budgets
// and audits.
struct DerivedMetrics {
  double d_max = 0.0;    // largest pairwise distance
  double mu = 0.0;       // log2(d_max / d_min) = log2(d_max) after normalization
  double r_max = 0.0;    // maximum transmission range at p_max
  int diameter = 0;      // hop diameter of the disk graph at range r_max
};

// Power constant used for protocol transmissions at nominal range r:
// P = c' * r^alpha. The default doubles the bare decode requirement
// noise * beta so a lone in-range transmission carries an SINR margin of 2.
inline double power_constant(const Instance& inst) {
  if (inst.broadcast.c_prime > 0.0) return inst.broadcast.c_prime;
  return 2.0 * inst.params.noise * inst.params.beta;
}

// Slot budgets round up and are never negative.
inline std::uint32_t ceil_slots(double x) {
  if (!(x > 0.0)) return 0;
  return static_cast<std::uint32_t>(std::ceil(x));
}

// floor(log2(x)) with a small slack in log space, so a value that is an exact
// power of two up to rounding of its construction (x = 2^k within one part in
// 1e-9) lands on k rather than k - 1. Phase counts and class indices must not
// flip on the last bit of a pow() round-trip.
inline int floor_log2_tol(double x) {
  return static_cast<int>(std::floor(std::log2(x) + 1e-9));
}

[[noreturn]] inline void fail_invariant(const std::string& what) {
  throw std::logic_error("internal invariant violated: " + what);
}

#define MSTSINR_ASSERT(cond, what) \
  do {                             \
    if (!(cond)) ::mstsinr::fail_invariant(what); \
  } while (0)

}  // namespace mstsinr
