#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mstsinr/types.hpp"

namespace mstsinr {

// splitmix64: used only to decorrelate per-node seeds derived from the
// global run seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Deterministic random stream with self-defined mappings from raw 64-bit
// draws to doubles, so results do not depend on library distribution
// internals. One stream per node keeps traces independent of the order in
// which other nodes consume randomness.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // Uniform in [0, 1): 53 random mantissa bits.
  double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool coin(double p) { return u01() < p; }

  // Uniform draw strictly inside (0, bound). Rounding at the interval ends is
  // clamped away: ranks must stay strictly below their parent's rank for the
  // tree potential argument to hold.
  double below(double bound) {
    double v = u01() * bound;
    if (v >= bound) v = std::nextafter(bound, 0.0);
    if (v <= 0.0) v = std::nextafter(0.0, bound);
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

// Per-node streams seeded from (run seed, node id).
class RngPool {
 public:
  RngPool(std::uint64_t seed, std::size_t n) {
    streams_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      streams_.emplace_back(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i) + 1)));
    }
  }

  RngStream& at(NodeId id) { return streams_[id]; }
  std::size_t size() const { return streams_.size(); }

 private:
  std::vector<RngStream> streams_;
};

}  // namespace mstsinr
