#include "mstsinr/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "mstsinr/kernels.hpp"

namespace mstsinr {

namespace {

inline std::uint64_t pair_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Random-access broadcast as a slot protocol: senders flip independent coins,
// receivers listen whenever they are not transmitting themselves.
class BroadcastProtocol final : public Protocol {
 public:
  BroadcastProtocol(const BroadcastRequest& req, const Instance& inst, RngPool& rngs,
                    double accept_radius, double tx_prob, BroadcastReport& report)
      : req_(&req), inst_(&inst), rngs_(&rngs), tx_prob_(tx_prob), report_(&report) {
    accept_r2_ = accept_radius * accept_radius;
    const double r_b2 = req.r_b * req.r_b;
    is_receiver_.assign(inst.n(), 0);
    for (NodeId v : req.receivers) is_receiver_[v] = 1;
    for (NodeId u : req.senders) {
      for (NodeId v : req.receivers) {
        if (u != v && dist2(inst.nodes[u], inst.nodes[v]) <= r_b2) {
          pending_.insert(pair_key(u, v));
        }
      }
    }
    // Diagnostic threshold: total received power a receiver would see from a
    // lone sender at distance gamma_prime * r_b, plus noise. Accepts above it
    // are counted, not rejected; rejecting them would discard deliveries that
    // own-signal strength alone pushes past the threshold.
    interference_bar_ = req.power / std::pow(inst.broadcast.gamma_prime * req.r_b,
                                             inst.params.alpha) +
                        inst.params.noise;
  }

  bool done() const override { return pending_.empty(); }

  void decide(std::uint32_t, std::vector<Decision>& decisions) override {
    for (NodeId u : req_->senders) {
      if (rngs_->at(u).coin(tx_prob_)) {
        decisions[u] = {Action::transmit, req_->power,
                        req_->payload_of ? req_->payload_of(u) : Payload{}};
      }
    }
    for (NodeId v : req_->receivers) {
      if (decisions[v].action != Action::transmit) {
        decisions[v] = {Action::listen, 0.0, {}};
      }
    }
  }

  void observe(const SlotRecord& rec) override {
    for (const Delivery& d : rec.deliveries) {
      if (!is_receiver_[d.receiver]) continue;
      if (dist2(inst_->nodes[d.sender], inst_->nodes[d.receiver]) > accept_r2_) continue;
      AcceptRecord ar{rec.slot, d.sender, d.receiver};
      report_->accepted.push_back(ar);
      pending_.erase(pair_key(d.sender, d.receiver));
      const auto it = std::lower_bound(
          rec.total_power_at.begin(), rec.total_power_at.end(), d.receiver,
          [](const std::pair<NodeId, double>& e, NodeId v) { return e.first < v; });
      MSTSINR_ASSERT(it != rec.total_power_at.end() && it->first == d.receiver,
                     "broadcast: delivery to a node with no listener record");
      if (it->second > interference_bar_) ++report_->high_interference_accepts;
      if (req_->on_accept) req_->on_accept(ar, d.payload);
    }
  }

  std::vector<std::pair<NodeId, NodeId>> unmet() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(pending_.size());
    for (std::uint64_t k : pending_) {
      out.emplace_back(static_cast<NodeId>(k >> 32), static_cast<NodeId>(k & 0xffffffffu));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  const BroadcastRequest* req_;
  const Instance* inst_;
  RngPool* rngs_;
  double tx_prob_;
  BroadcastReport* report_;
  double accept_r2_ = 0.0;
  double interference_bar_ = 0.0;
  std::vector<char> is_receiver_;
  std::unordered_set<std::uint64_t> pending_;
};

}  // namespace

std::size_t density(std::span<const NodeId> members, double radius, const Instance& inst) {
  if (members.empty()) return 0;
  std::vector<double> xs(members.size()), ys(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    xs[i] = inst.nodes[members[i]].x;
    ys[i] = inst.nodes[members[i]].y;
  }
  const double r2 = radius * radius;
  std::size_t best = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    best = std::max(best, kern::count_within(xs.data(), ys.data(), members.size(),
                                             xs[i], ys[i], r2));
  }
  return best;
}

BroadcastReport local_broadcast(Engine& engine, RngPool& rngs, const BroadcastRequest& req) {
  const Instance& inst = engine.instance();
  MSTSINR_ASSERT(req.r_b > 0.0, "local_broadcast: nonpositive nominal range");
  MSTSINR_ASSERT(req.power > 0.0 && req.power <= inst.params.p_max,
                 "local_broadcast: power outside (0, p_max]");

  BroadcastReport report;
  report.label = req.label;
  report.r_b = req.r_b;
  report.power = req.power;
  report.accept_radius = req.accept_radius.value_or(inst.broadcast.gamma * req.r_b);
  report.density_n = density(req.senders, inst.broadcast.gamma * req.r_b, inst);
  report.budget = ceil_slots(inst.broadcast.rounds_factor *
                             static_cast<double>(report.density_n) *
                             std::log2(static_cast<double>(inst.n())));

  engine.mark(req.label);
  if (req.senders.empty() || report.density_n == 0) {
    report.goal_met = true;
    return report;
  }
  const double tx_prob = 1.0 / static_cast<double>(report.density_n);
  BroadcastProtocol proto(req, inst, rngs, report.accept_radius, tx_prob, report);
  const ProtocolRun run = run_protocol(engine, proto, report.budget);
  report.slots_used = run.slots;
  report.goal_met = run.completed;
  report.unmet_pairs = proto.unmet();
  return report;
}

DomResult const_dominating_set(Engine& engine, RngPool& rngs,
                               std::span<const NodeId> members, double r_c) {
  const Instance& inst = engine.instance();
  const double log2n = std::log2(static_cast<double>(inst.n()));
  DomResult res;
  res.charged_slots = ceil_slots(inst.broadcast.rounds_factor * log2n);
  const std::uint32_t start_slots = engine.slots_used();
  const double p_c =
      std::min(power_constant(inst) * std::pow(r_c, inst.params.alpha), inst.params.p_max);

  enum : char { out = 0, undecided = 1, dominated = 2, joined = 3 };
  std::vector<char> state(inst.n(), out);
  for (NodeId v : members) state[v] = undecided;
  std::vector<double> pri(inst.n(), 0.0);

  // Every round at least one contender joins (a locally maximal priority
  // defers to nobody), so log-many rounds suffice with the same constant as
  // the charged budget. Running out of rounds is reported, never hidden.
  const std::uint32_t max_rounds = std::max<std::uint32_t>(1, res.charged_slots);
  bool all_goals = true;

  for (std::uint32_t round = 1; round <= max_rounds; ++round) {
    std::vector<NodeId> active;
    for (NodeId v = 0; v < inst.n(); ++v) {
      if (state[v] == undecided) active.push_back(v);
    }
    if (active.empty()) break;
    res.rounds = round;
    for (NodeId v : active) pri[v] = rngs.at(v).u01();

    std::vector<double> best_val(inst.n(), -1.0);
    std::vector<NodeId> best_id(inst.n(), 0);
    std::vector<char> has_best(inst.n(), 0);

    BroadcastRequest contend;
    contend.label = "domset.round" + std::to_string(round) + ".contend";
    contend.senders = active;
    contend.receivers = active;
    contend.r_b = r_c;
    contend.power = p_c;
    contend.accept_radius = r_c;
    contend.payload_of = [&](NodeId v) { return Payload{PayloadKind::contend, v, pri[v]}; };
    contend.on_accept = [&](const AcceptRecord& ar, const Payload& pl) {
      const NodeId v = ar.receiver;
      if (!has_best[v] || pl.value > best_val[v] ||
          (pl.value == best_val[v] && pl.id > best_id[v])) {
        has_best[v] = 1;
        best_val[v] = pl.value;
        best_id[v] = pl.id;
      }
    };
    BroadcastReport rep = local_broadcast(engine, rngs, contend);
    all_goals = all_goals && rep.goal_met;
    res.reports.push_back(std::move(rep));

    std::vector<NodeId> joiners;
    for (NodeId v : active) {
      const bool wins = !has_best[v] || pri[v] > best_val[v] ||
                        (pri[v] == best_val[v] && v > best_id[v]);
      if (wins) {
        joiners.push_back(v);
        state[v] = joined;
        res.dom.push_back(v);
      }
    }
    std::vector<NodeId> remaining;
    for (NodeId v = 0; v < inst.n(); ++v) {
      if (state[v] == undecided) remaining.push_back(v);
    }
    if (!joiners.empty() && !remaining.empty()) {
      BroadcastRequest announce;
      announce.label = "domset.round" + std::to_string(round) + ".announce";
      announce.senders = joiners;
      announce.receivers = remaining;
      announce.r_b = r_c;
      announce.power = p_c;
      announce.accept_radius = r_c;
      announce.payload_of = [&](NodeId v) { return Payload{PayloadKind::join, v, pri[v]}; };
      announce.on_accept = [&](const AcceptRecord& ar, const Payload&) {
        state[ar.receiver] = dominated;
      };
      rep = local_broadcast(engine, rngs, announce);
      all_goals = all_goals && rep.goal_met;
      res.reports.push_back(std::move(rep));
    }
  }

  res.emulation_slots = engine.slots_used() - start_slots;
  bool undecided_left = false;
  for (NodeId v = 0; v < inst.n(); ++v) {
    if (state[v] == undecided) undecided_left = true;
  }
  res.ok = all_goals && !undecided_left;
  std::sort(res.dom.begin(), res.dom.end());
  return res;
}

}  // namespace mstsinr
