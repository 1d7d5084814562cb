#include "mstsinr/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace mstsinr {

int length_class(double length) {
  MSTSINR_ASSERT(length > 0.5, "length_class: length below the normalized minimum");
  if (length <= 2.0) return 1;
  const int e = std::ilogb(length);
  return std::ldexp(1.0, e) == length ? e : e + 1;
}

namespace {

struct OrientedLink {
  NodeId sender = 0;
  NodeId receiver = 0;
  double length = 0.0;
  std::size_t edge = 0;
};

}  // namespace

ScheduleResult schedule_tree(Engine& engine, RngPool& rngs, const TreeResult& tree,
                             const std::vector<std::uint8_t>& parent_sends) {
  const Instance& inst = engine.instance();
  MSTSINR_ASSERT(parent_sends.size() == tree.edges.size(),
                 "schedule_tree: one orientation flag per edge");
  const std::size_t n = inst.n();
  const double log2n = std::log2(static_cast<double>(n));

  std::map<int, std::vector<OrientedLink>> classes;
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const TreeEdge& te = tree.edges[e];
    OrientedLink l;
    l.sender = parent_sends[e] ? te.parent : te.child;
    l.receiver = parent_sends[e] ? te.child : te.parent;
    l.length = std::sqrt(dist2(inst.nodes[te.child], inst.nodes[te.parent]));
    l.edge = e;
    classes[length_class(l.length)].push_back(l);
  }

  ScheduleResult res;
  res.first_success.assign(tree.edges.size(), 0);
  std::vector<Decision> decisions(n);

  for (auto& [cls, links] : classes) {
    std::sort(links.begin(), links.end(),
              [](const OrientedLink& a, const OrientedLink& b) { return a.edge < b.edge; });
    const double nominal = std::ldexp(1.0, cls);
    const double power =
        std::min(power_constant(inst) * std::pow(nominal, inst.params.alpha),
                 inst.params.p_max);

    // K: the densest any node sees this class, counting links with either
    // endpoint within twice the nominal length.
    const double reach = std::ldexp(1.0, cls + 1);
    const double reach2 = reach * reach;
    std::size_t k = 0;
    for (NodeId v = 0; v < n; ++v) {
      std::size_t c = 0;
      for (const OrientedLink& l : links) {
        if (dist2(inst.nodes[v], inst.nodes[l.sender]) <= reach2 ||
            dist2(inst.nodes[v], inst.nodes[l.receiver]) <= reach2) {
          ++c;
        }
      }
      k = std::max(k, c);
    }
    MSTSINR_ASSERT(k >= 1, "schedule_tree: nonempty class with zero density");

    ClassRun run;
    run.index = cls;
    run.nominal_length = nominal;
    run.power = power;
    run.links = links.size();
    run.k = k;
    run.budget = ceil_slots(inst.broadcast.rounds_factor * static_cast<double>(k) * log2n);

    engine.mark("sched.class" + std::to_string(cls));
    const double tx_prob = 1.0 / static_cast<double>(k);
    std::vector<OrientedLink> active = links;

    while (!active.empty() && run.slots_used < run.budget) {
      decisions.assign(n, Decision{});
      // Coins come from the sender's stream in ascending edge order; a sender
      // holding several pending links sends only the lowest-indexed winner,
      // but later coins are still drawn so the stream position is a function
      // of the pending set alone.
      std::vector<const OrientedLink*> fired;
      for (const OrientedLink& l : active) {
        if (rngs.at(l.sender).coin(tx_prob) &&
            decisions[l.sender].action != Action::transmit) {
          decisions[l.sender] = {Action::transmit, power,
                                 {PayloadKind::sched, l.receiver, static_cast<double>(l.edge)}};
          fired.push_back(&l);
        }
      }
      for (const OrientedLink* l : fired) {
        if (decisions[l->receiver].action != Action::transmit) {
          decisions[l->receiver] = {Action::listen, 0.0, {}};
        }
      }
      const SlotRecord& rec = engine.run_slot(decisions);
      ++run.slots_used;
      ++res.slots_total;

      std::vector<SchedLink> row;
      for (const Delivery& d : rec.deliveries) {
        if (d.payload.kind != PayloadKind::sched || d.payload.id != d.receiver) continue;
        const std::size_t edge = static_cast<std::size_t>(d.payload.value);
        const auto it = std::find_if(active.begin(), active.end(), [&](const OrientedLink& l) {
          return l.edge == edge && l.sender == d.sender && l.receiver == d.receiver;
        });
        MSTSINR_ASSERT(it != active.end(), "schedule_tree: delivery for an inactive link");
        row.push_back({d.sender, d.receiver, power, edge});
        res.first_success[edge] = res.slots_total;
        active.erase(it);
      }
      std::sort(row.begin(), row.end(),
                [](const SchedLink& a, const SchedLink& b) { return a.edge < b.edge; });
      res.slots.push_back(std::move(row));
    }

    for (const OrientedLink& l : active) res.unscheduled.push_back(l.edge);
    res.classes.push_back(run);
  }

  std::sort(res.unscheduled.begin(), res.unscheduled.end());
  for (std::uint32_t s : res.first_success) res.completion_slot = std::max(res.completion_slot, s);
  res.ok = res.unscheduled.empty();
  return res;
}

}  // namespace mstsinr
