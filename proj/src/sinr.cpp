#include "mstsinr/sinr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mstsinr/kernels.hpp"

namespace mstsinr {

namespace {

// Largest-first accumulation: a fixed, input-order-independent summation so
// replays and audits reproduce slot arithmetic bit-for-bit.
double sum_descending(std::vector<double>& vals) {
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  double s = 0.0;
  for (double v : vals) s += v;
  return s;
}

thread_local std::vector<double> t_contrib;

// Received power at `at` from each transmission, in txs order.
void gather_contributions(const Point& at, std::span<const Transmission> txs,
                          const Instance& inst, std::vector<double>& out) {
  thread_local std::vector<double> xs, ys, d2;
  const std::size_t m = txs.size();
  xs.resize(m);
  ys.resize(m);
  d2.resize(m);
  out.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Point& s = inst.nodes[txs[i].sender];
    xs[i] = s.x;
    ys[i] = s.y;
  }
  kern::squared_dists(xs.data(), ys.data(), m, at.x, at.y, d2.data());
  // Powers can differ per transmission (clamped top phases), so convert one
  // run of equal powers at a time; runs are long in practice.
  std::size_t i = 0;
  while (i < m) {
    std::size_t j = i + 1;
    while (j < m && txs[j].power == txs[i].power) ++j;
    kern::received_powers(d2.data() + i, j - i, inst.params.alpha, txs[i].power, out.data() + i);
    i = j;
  }
}

}  // namespace

double range_of_power(double power, const SinrParams& p) {
  if (power <= 0.0) return 0.0;
  return std::pow(power / (p.noise * p.beta), 1.0 / p.alpha);
}

double power_of_range(double range, const SinrParams& p) {
  if (range < 0.0) throw std::invalid_argument("power_of_range: negative range");
  return p.noise * p.beta * std::pow(range, p.alpha);
}

double total_received_power(NodeId receiver, std::span<const Transmission> txs,
                            const Instance& inst) {
  gather_contributions(inst.nodes[receiver], txs, inst, t_contrib);
  return sum_descending(t_contrib) + inst.params.noise;
}

double sinr_at(NodeId receiver, NodeId intended, std::span<const Transmission> txs,
               const Instance& inst) {
  gather_contributions(inst.nodes[receiver], txs, inst, t_contrib);
  double signal = -1.0;
  thread_local std::vector<double> others;
  others.clear();
  for (std::size_t i = 0; i < txs.size(); ++i) {
    MSTSINR_ASSERT(txs[i].sender != receiver, "sinr_at: receiver is transmitting");
    if (txs[i].sender == intended && signal < 0.0) {
      signal = t_contrib[i];
    } else {
      others.push_back(t_contrib[i]);
    }
  }
  MSTSINR_ASSERT(signal >= 0.0, "sinr_at: intended sender not in transmission set");
  const double denom = sum_descending(others) + inst.params.noise;
  return signal / denom;
}

ReceiverOutcome evaluate_receiver(NodeId receiver, std::span<const Transmission> txs,
                                  const Instance& inst) {
  ReceiverOutcome out;
  thread_local std::vector<double> contrib;
  gather_contributions(inst.nodes[receiver], txs, inst, contrib);
  thread_local std::vector<double> sums;
  sums = contrib;
  out.total_power = sum_descending(sums) + inst.params.noise;
  if (txs.empty()) return out;
  double best = contrib[0];
  for (double c : contrib) best = std::max(best, c);
  // Only a sender of maximal received power can decode when beta > 1: any
  // other sender finds a term at least as large as its own signal in the
  // denominator, capping its ratio at 1. Checking just the argmax candidates
  // therefore loses nothing, and ties knock each other out below beta.
  thread_local std::vector<NodeId> cands;
  cands.clear();
  for (std::size_t i = 0; i < txs.size(); ++i) {
    if (contrib[i] == best) cands.push_back(txs[i].sender);
  }
  for (NodeId c : cands) {
    if (sinr_at(receiver, c, txs, inst) >= inst.params.beta) {
      MSTSINR_ASSERT(!out.decoded, "evaluate_receiver: two concurrent decodes");
      out.decoded = true;
      out.sender = c;
    }
  }
  return out;
}

std::vector<bool> feasible_each(std::span<const Link> links, const Instance& inst) {
  thread_local std::vector<Transmission> txs;
  txs.clear();
  for (const Link& l : links) {
    bool seen = false;
    for (const Transmission& t : txs) {
      if (t.sender == l.sender) {
        if (t.power != l.power) {
          throw std::invalid_argument("feasible: one sender with two distinct powers");
        }
        seen = true;
        break;
      }
    }
    if (!seen) txs.push_back({l.sender, l.power});
  }
  std::vector<bool> ok(links.size(), false);
  for (std::size_t i = 0; i < links.size(); ++i) {
    const Link& l = links[i];
    bool rx_transmits = false;
    for (const Transmission& t : txs) {
      if (t.sender == l.receiver) {
        rx_transmits = true;
        break;
      }
    }
    if (rx_transmits) continue;
    ok[i] = sinr_at(l.receiver, l.sender, txs, inst) >= inst.params.beta;
  }
  return ok;
}

bool feasible(std::span<const Link> links, const Instance& inst) {
  const auto each = feasible_each(links, inst);
  return std::all_of(each.begin(), each.end(), [](bool b) { return b; });
}

}  // namespace mstsinr
