#pragma once

#include <span>
#include <vector>

#include "mstsinr/types.hpp"

namespace mstsinr {

// One node transmitting in the current slot.
struct Transmission {
  NodeId sender = 0;
  double power = 0.0;
};

// A directed sender -> receiver transmission request with its power.
struct Link {
  NodeId sender = 0;
  NodeId receiver = 0;
  double power = 0.0;
};

// Largest distance at which a transmission at `power` can be decoded with no
// interference: (power / (noise * beta))^(1/alpha).
double range_of_power(double power, const SinrParams& p);

// Exact inverse: the power whose interference-free decode range is `range`.
double power_of_range(double range, const SinrParams& p);

inline double max_range(const SinrParams& p) { return range_of_power(p.p_max, p); }

// Sum of received powers at `receiver` from every transmission in `txs`,
// plus the noise floor. Contributions are accumulated largest-first so the
// value is a deterministic function of the set, not of iteration order.
double total_received_power(NodeId receiver, std::span<const Transmission> txs,
                            const Instance& inst);

// Signal-to-interference-plus-noise ratio of `intended`'s transmission as
// heard at `receiver`, with every other member of `txs` counted as
// interference. `intended` must be in `txs`; `receiver` must not be.
double sinr_at(NodeId receiver, NodeId intended, std::span<const Transmission> txs,
               const Instance& inst);

// Outcome of one listener's slot: the total received power (signal sum plus
// noise) and the decoded sender, if any. With beta > 1 at most one concurrent
// transmission can decode at a given receiver; only a sender whose received
// power is maximal can pass the threshold, so the evaluation checks exactly
// the argmax candidates with the same arithmetic sinr_at uses. The engine and
// the trace audit both go through this function, which is what makes replays
// exact rather than tolerance-based.
struct ReceiverOutcome {
  double total_power = 0.0;
  bool decoded = false;
  NodeId sender = 0;
};
ReceiverOutcome evaluate_receiver(NodeId receiver, std::span<const Transmission> txs,
                                  const Instance& inst);

// Per-link decode success when all links' senders transmit in one slot.
// A link fails if its receiver is itself transmitting (half-duplex) or its
// SINR falls below beta. Links sharing a sender must agree on power.
std::vector<bool> feasible_each(std::span<const Link> links, const Instance& inst);

// True iff every link in the set succeeds simultaneously.
bool feasible(std::span<const Link> links, const Instance& inst);

}  // namespace mstsinr
