#include "mstsinr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mstsinr/primitives.hpp"
#include "mstsinr/sinr.hpp"

namespace mstsinr {

namespace {

struct UnionFind {
  std::vector<NodeId> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), NodeId{0});
  }

  NodeId find(NodeId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  bool unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// Ascending-order sum, so both MST methods and the audit reproduce the same
// total for the same edge-length multiset.
double sorted_sum(std::vector<double>& vals) {
  std::sort(vals.begin(), vals.end());
  double s = 0.0;
  for (double v : vals) s += v;
  return s;
}

std::string slot_ctx(std::uint32_t slot, NodeId node) {
  return "slot " + std::to_string(slot) + ", node " + std::to_string(node);
}

std::string pair_ctx(NodeId u, NodeId v) {
  return "nodes " + std::to_string(u) + " and " + std::to_string(v);
}

// Trace-level replay shared by the pipeline and schedule audits: structural
// slot checks, then every delivery recomputed from first principles. The
// recomputation scans all transmitter-listener pairs; it never trusts the
// engine's shortcut of checking only the strongest candidate.
void replay_trace(AuditReport& rep, const Instance& inst, const Trace& trace) {
  const std::size_t n = inst.n();
  std::vector<Transmission> txs;
  std::vector<char> transmitting(n, 0), listening(n, 0);

  for (const SlotRecord& rec : trace.slots) {
    txs.clear();
    std::fill(transmitting.begin(), transmitting.end(), 0);
    std::fill(listening.begin(), listening.end(), 0);

    NodeId prev = 0;
    bool first = true;
    for (const TxRecord& t : rec.transmissions) {
      if (t.sender >= n || (!first && t.sender <= prev)) {
        rep.fail("slot-structure", slot_ctx(rec.slot, t.sender) + ": bad transmitter order");
        continue;
      }
      prev = t.sender;
      first = false;
      if (!(t.power > 0.0) || t.power > inst.params.p_max) {
        rep.fail("slot-power", slot_ctx(rec.slot, t.sender) + ": power outside (0, p_max]");
      }
      transmitting[t.sender] = 1;
      txs.push_back({t.sender, t.power});
    }

    first = true;
    for (const auto& [v, total] : rec.total_power_at) {
      if (v >= n || (!first && v <= prev)) {
        rep.fail("slot-structure", slot_ctx(rec.slot, v) + ": bad listener order");
        continue;
      }
      prev = v;
      first = false;
      if (transmitting[v]) {
        rep.fail("half-duplex", slot_ctx(rec.slot, v) + ": node both transmits and listens");
        continue;
      }
      listening[v] = 1;
      const double expect = total_received_power(v, txs, inst);
      if (expect != total) {
        rep.fail("slot-total-power", slot_ctx(rec.slot, v) + ": recorded total differs");
      }
    }

    std::vector<char> delivered_to(n, 0);
    for (const Delivery& d : rec.deliveries) {
      if (d.receiver >= n || !listening[d.receiver]) {
        ++rep.sinr_violations;
        rep.fail("delivery-receiver", slot_ctx(rec.slot, d.receiver) + ": not a listener");
        continue;
      }
      if (delivered_to[d.receiver]) {
        ++rep.sinr_violations;
        rep.fail("delivery-multiple", slot_ctx(rec.slot, d.receiver) + ": second decode");
      }
      delivered_to[d.receiver] = 1;
      const TxRecord* tx = nullptr;
      for (const TxRecord& t : rec.transmissions) {
        if (t.sender == d.sender) {
          tx = &t;
          break;
        }
      }
      if (tx == nullptr) {
        ++rep.sinr_violations;
        rep.fail("delivery-sender", slot_ctx(rec.slot, d.sender) + ": sender did not transmit");
      } else if (!(tx->payload == d.payload)) {
        rep.fail("delivery-payload", slot_ctx(rec.slot, d.receiver) + ": payload altered");
      }
    }

    for (const auto& [v, total] : rec.total_power_at) {
      if (transmitting[v]) continue;
      NodeId decoded = 0;
      int count = 0;
      for (const Transmission& t : txs) {
        if (sinr_at(v, t.sender, txs, inst) >= inst.params.beta) {
          decoded = t.sender;
          ++count;
        }
      }
      if (count > 1) {
        ++rep.sinr_violations;
        rep.fail("delivery-ambiguous", slot_ctx(rec.slot, v) + ": threshold met twice");
        continue;
      }
      const Delivery* rec_d = nullptr;
      for (const Delivery& d : rec.deliveries) {
        if (d.receiver == v) {
          rec_d = &d;
          break;
        }
      }
      const bool expect = count == 1;
      const bool have = rec_d != nullptr;
      if (expect != have || (have && rec_d->sender != decoded)) {
        ++rep.sinr_violations;
        rep.fail("delivery-mismatch", slot_ctx(rec.slot, v) + ": replay disagrees");
      }
    }
  }
}

void check_broadcast_report(AuditReport& rep, const Instance& inst, const Trace& trace,
                            const BroadcastReport& br) {
  if (!br.goal_met) {
    rep.fail("broadcast-goal",
             br.label + ": " + std::to_string(br.unmet_pairs.size()) + " pairs undelivered");
  }
  if (br.slots_used > br.budget) {
    rep.fail("broadcast-budget", br.label + ": ran past its slot budget");
  }
  if (br.accept_radius > inst.broadcast.gamma * br.r_b * (1.0 + kGeomTol)) {
    rep.fail("accept-radius-config", br.label + ": radius above gamma * r_b");
  }
  const double ar2 = br.accept_radius * br.accept_radius;
  for (const AcceptRecord& a : br.accepted) {
    if (a.slot >= trace.slots.size()) {
      rep.fail("accept-slot", br.label + ": accept at slot past the trace end");
      continue;
    }
    const SlotRecord& rec = trace.slots[a.slot];
    bool found = false;
    for (const Delivery& d : rec.deliveries) {
      if (d.sender == a.sender && d.receiver == a.receiver) {
        found = true;
        break;
      }
    }
    if (!found) {
      rep.fail("accept-without-delivery",
               br.label + ": slot " + std::to_string(a.slot) + ", " +
                   pair_ctx(a.sender, a.receiver));
    }
    if (dist2(inst.nodes[a.sender], inst.nodes[a.receiver]) > ar2) {
      rep.fail("accept-radius", br.label + ": " + pair_ctx(a.sender, a.receiver) +
                                    " beyond the acceptance radius");
    }
  }
}

}  // namespace

MstResult exact_mst(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  MSTSINR_ASSERT(n >= 2, "exact_mst: need at least two points");
  MstResult res;

  struct E {
    double d2;
    NodeId u, v;
  };
  std::vector<E> edges;
  edges.reserve(n * (n - 1) / 2);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      edges.push_back({dist2(pts[u], pts[v]), u, v});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const E& a, const E& b) {
    if (a.d2 != b.d2) return a.d2 < b.d2;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  UnionFind uf(n);
  std::vector<double> lens;
  lens.reserve(n - 1);
  for (const E& e : edges) {
    if (uf.unite(e.u, e.v)) {
      res.edges.emplace_back(e.u, e.v);
      lens.push_back(std::sqrt(e.d2));
      if (res.edges.size() == n - 1) break;
    }
  }
  res.cost = sorted_sum(lens);

  // Frontier growth from node 0: repeatedly absorb the point closest to the
  // tree built so far.
  std::vector<double> key(n, std::numeric_limits<double>::infinity());
  std::vector<char> inside(n, 0);
  key[0] = 0.0;
  std::vector<double> lens2;
  lens2.reserve(n - 1);
  for (std::size_t step = 0; step < n; ++step) {
    NodeId pick = 0;
    double best = std::numeric_limits<double>::infinity();
    for (NodeId v = 0; v < n; ++v) {
      if (!inside[v] && key[v] < best) {
        best = key[v];
        pick = v;
      }
    }
    inside[pick] = 1;
    if (step > 0) lens2.push_back(std::sqrt(best));
    for (NodeId v = 0; v < n; ++v) {
      if (!inside[v]) key[v] = std::min(key[v], dist2(pts[pick], pts[v]));
    }
  }
  res.cost_frontier = sorted_sum(lens2);
  MSTSINR_ASSERT(std::abs(res.cost - res.cost_frontier) <= 1e-9,
                 "exact_mst: the two methods disagree beyond 1e-9");
  return res;
}

double approximation_ratio(const TreeResult& tree, const Instance& inst) {
  const std::size_t n = inst.n();
  if (tree.edges.size() != n - 1) {
    throw std::invalid_argument("approximation_ratio: tree does not have n-1 edges");
  }
  UnionFind uf(n);
  for (const TreeEdge& e : tree.edges) {
    if (e.child >= n || e.parent >= n || !uf.unite(e.child, e.parent)) {
      throw std::invalid_argument("approximation_ratio: edges contain a cycle or bad ids");
    }
  }
  return tree_cost(tree.edges, inst) / exact_mst(inst.nodes).cost;
}

bool AuditReport::ok() const {
  if (sinr_violations != 0 || !invariant_failures.empty()) return false;
  for (const auto& [name, mb] : bounds) {
    if (!(mb.first <= mb.second)) return false;
  }
  return true;
}

void AuditReport::fail(const std::string& name, const std::string& context) {
  invariant_failures.emplace_back(name, context);
}

AuditReport audit_run(const Instance& inst, const DerivedMetrics& derived, const Trace& trace,
                      const PipelineResult& run, double budget_factor) {
  AuditReport rep;
  const std::size_t n = inst.n();
  rep.slots_used = run.stage_slots.total_charged();

  replay_trace(rep, inst, trace);

  for (const std::string& f : run.failures) rep.fail("pipeline", f);
  for (const BroadcastReport& br : run.dom.reports) check_broadcast_report(rep, inst, trace, br);
  for (const BroadcastReport& br : run.cd.reports) check_broadcast_report(rep, inst, trace, br);
  if (run.has_rank_stage) check_broadcast_report(rep, inst, trace, run.rank_bcast);
  for (const BpPhase& ph : run.bp.phases) check_broadcast_report(rep, inst, trace, ph.report);

  // Forest phase geometry: surviving nodes are half a scale apart, balls stay
  // sparse, and each phase's forest costs at most four times the exact MST of
  // its participants.
  for (const BpPhase& ph : run.bp.phases) {
    const double sep = ph.d / 2.0 - kGeomTol;
    const double sep2 = sep * sep;
    const double ball2 = ph.d * ph.d;
    for (std::size_t i = 0; i < ph.members.size(); ++i) {
      std::size_t in_ball = 0;
      for (std::size_t j = 0; j < ph.members.size(); ++j) {
        const double d2 = dist2(inst.nodes[ph.members[i]], inst.nodes[ph.members[j]]);
        if (i != j && d2 < sep2) {
          rep.fail("phase-separation", "phase " + std::to_string(ph.index) + ": " +
                                           pair_ctx(ph.members[i], ph.members[j]));
        }
        if (d2 <= ball2) ++in_ball;
      }
      if (in_ball > 16) {
        rep.fail("phase-ball", "phase " + std::to_string(ph.index) + ": node " +
                                   std::to_string(ph.members[i]) + " sees " +
                                   std::to_string(in_ball));
      }
    }
    if (ph.members.size() > 1) {
      std::vector<double> lens;
      for (std::size_t e = 0; e < run.bp.edges.size(); ++e) {
        if (run.bp.edge_phase[e] != ph.index) continue;
        const auto& [c, p] = run.bp.edges[e];
        lens.push_back(std::sqrt(dist2(inst.nodes[c], inst.nodes[p])));
      }
      const double forest_cost = sorted_sum(lens);
      std::vector<Point> pts;
      pts.reserve(ph.members.size());
      for (NodeId v : ph.members) pts.push_back(inst.nodes[v]);
      const double mst_cost = exact_mst(pts).cost;
      if (forest_cost > 4.0 * mst_cost + kGeomTol) {
        rep.fail("phase-cost-chain",
                 "phase " + std::to_string(ph.index) + ": forest " +
                     std::to_string(forest_cost) + " vs 4*MST " + std::to_string(4.0 * mst_cost));
      }
      rep.info["phase" + std::to_string(ph.index) + "_cost_ratio"] =
          mst_cost > 0.0 ? forest_cost / mst_cost : 0.0;
    }
  }
  {
    const double sep = derived.r_max / 2.0 - kGeomTol;
    const double sep2 = sep * sep;
    for (std::size_t i = 0; i < run.bp.roots.size(); ++i) {
      for (std::size_t j = i + 1; j < run.bp.roots.size(); ++j) {
        if (dist2(inst.nodes[run.bp.roots[i]], inst.nodes[run.bp.roots[j]]) < sep2) {
          rep.fail("root-separation", pair_ctx(run.bp.roots[i], run.bp.roots[j]));
        }
      }
    }
  }

  // Dominating-set properties.
  const double r_c = derived.r_max / inst.params.conn_c;
  {
    const double rc2 = r_c * r_c;
    for (NodeId v = 0; v < n; ++v) {
      bool covered = false;
      for (NodeId d : run.dom.dom) {
        if (dist2(inst.nodes[v], inst.nodes[d]) <= rc2) {
          covered = true;
          break;
        }
      }
      if (!covered) rep.fail("dom-domination", "node " + std::to_string(v) + " uncovered");
    }
    for (std::size_t i = 0; i < run.dom.dom.size(); ++i) {
      for (std::size_t j = i + 1; j < run.dom.dom.size(); ++j) {
        if (dist2(inst.nodes[run.dom.dom[i]], inst.nodes[run.dom.dom[j]]) <= rc2) {
          rep.fail("dom-separation", pair_ctx(run.dom.dom[i], run.dom.dom[j]));
        }
      }
    }
    std::vector<Point> pts;
    pts.reserve(run.dom.dom.size());
    for (NodeId v : run.dom.dom) pts.push_back(inst.nodes[v]);
    std::size_t max_close = 0;
    const double twice2 = 4.0 * rc2;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::size_t c = 0;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (dist2(pts[i], pts[j]) <= twice2) ++c;
      }
      max_close = std::max(max_close, c);
    }
    rep.info["dom_size"] = static_cast<double>(run.dom.dom.size());
    rep.info["dom_max_in_2rc"] = static_cast<double>(max_close);
    if (pts.size() >= 2) {
      const auto diam = graph_diameter(disk_graph(pts, 2.0 * r_c));
      if (!diam) {
        rep.fail("dom-connectivity", "members disconnected at twice the dominating range");
      } else {
        rep.bounds["dom_diameter"] = {static_cast<double>(*diam),
                                      2.0 * static_cast<double>(derived.diameter)};
      }
    }
  }

  // Tree validity: n-1 edges, one parent per non-sink node, acyclic (which
  // with the edge count makes it spanning), edges within the acceptance
  // reach, ranks strictly increasing toward the parent.
  bool spanning = true;
  if (run.tree.edges.size() != n - 1) {
    spanning = false;
    rep.fail("tree-edge-count", std::to_string(run.tree.edges.size()) + " edges for n " +
                                    std::to_string(n));
  }
  const bool ranks_sized = run.rank.size() == n;
  if (!ranks_sized) rep.fail("rank-size", "rank vector does not cover every node");
  {
    std::vector<char> has_parent(n, 0);
    UnionFind uf(n);
    const double max_len = inst.broadcast.gamma * derived.r_max + kGeomTol;
    for (const TreeEdge& e : run.tree.edges) {
      if (e.child >= n || e.parent >= n || e.child == e.parent) {
        spanning = false;
        rep.fail("tree-edge-ids", pair_ctx(e.child, e.parent));
        continue;
      }
      if (e.child == run.tree.sink) {
        spanning = false;
        rep.fail("tree-sink-parent", "sink listed as a child");
      }
      if (has_parent[e.child]) {
        spanning = false;
        rep.fail("tree-parent-unique", "node " + std::to_string(e.child));
      }
      has_parent[e.child] = 1;
      if (!uf.unite(e.child, e.parent)) {
        spanning = false;
        rep.fail("tree-acyclic", pair_ctx(e.child, e.parent));
      }
      const double len = std::sqrt(dist2(inst.nodes[e.child], inst.nodes[e.parent]));
      if (len > max_len) {
        rep.fail("tree-edge-length", pair_ctx(e.child, e.parent) + " at length " +
                                         std::to_string(len));
      }
      if (ranks_sized &&
          !rank_less(run.rank[e.child], e.child, run.rank[e.parent], e.parent)) {
        rep.fail("rank-monotone", pair_ctx(e.child, e.parent));
      }
    }
    const double recomputed = tree_cost(run.tree.edges, inst);
    if (std::abs(recomputed - run.tree.cost) > kGeomTol) {
      rep.fail("tree-cost", "recorded cost differs from the edge lengths");
    }
  }

  const MstResult mst = exact_mst(inst.nodes);
  rep.info["mst_cost"] = mst.cost;
  rep.info["tree_cost"] = run.tree.cost;
  {
    double max_edge = 0.0;
    for (const auto& [u, v] : mst.edges) {
      max_edge = std::max(max_edge, std::sqrt(dist2(inst.nodes[u], inst.nodes[v])));
    }
    rep.info["mst_max_edge"] = max_edge;
    // The exact MST is the baseline OPT; the connectivity assumption keeps
    // its longest edge within the dominating range, so the complete-graph
    // MST and the disk-graph MST coincide.
    if (max_edge > r_c + kGeomTol) {
      rep.fail("mst-max-edge", "longest MST edge " + std::to_string(max_edge) +
                                   " exceeds r_max/conn_c " + std::to_string(r_c));
    }
  }
  if (spanning) {
    rep.cost_ratio = run.tree.cost / mst.cost;
    rep.bounds["cost_ratio"] = {rep.cost_ratio, 16.0 * derived.mu};
  } else {
    rep.fail("tree-spanning", "ratio not computed");
  }

  const double log2n = std::log2(static_cast<double>(n));
  rep.bounds["slots_total"] = {
      static_cast<double>(run.stage_slots.total_charged()),
      budget_factor * inst.broadcast.rounds_factor *
          (static_cast<double>(derived.diameter) + derived.mu) * log2n};
  rep.info["slots_domset_actual"] = static_cast<double>(run.stage_slots.domset_actual);
  rep.info["slots_domset_charged"] = static_cast<double>(run.stage_slots.domset_charged);
  rep.info["slots_cd"] = static_cast<double>(run.stage_slots.cd);
  rep.info["slots_rank_bcast"] = static_cast<double>(run.stage_slots.rank_bcast);
  rep.info["slots_bp"] = static_cast<double>(run.stage_slots.bp);
  rep.info["trace_slots"] = static_cast<double>(trace.slots.size());
  return rep;
}

AuditReport audit_schedule(const Instance& inst, const DerivedMetrics& derived,
                           const TreeResult& tree,
                           const std::vector<std::uint8_t>& parent_sends,
                           const ScheduleResult& sched, const Trace& trace,
                           double budget_factor) {
  AuditReport rep;
  const std::size_t n = inst.n();
  rep.slots_used = sched.slots_total;
  replay_trace(rep, inst, trace);

  if (parent_sends.size() != tree.edges.size()) {
    rep.fail("sched-orientations", "one orientation per edge required");
    return rep;
  }

  // Rebuild the class partition independently and compare the bookkeeping.
  struct Expect {
    NodeId sender, receiver;
    int cls;
    double power;
  };
  std::vector<Expect> expect(tree.edges.size());
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const TreeEdge& te = tree.edges[e];
    Expect& x = expect[e];
    x.sender = parent_sends[e] ? te.parent : te.child;
    x.receiver = parent_sends[e] ? te.child : te.parent;
    x.cls = length_class(std::sqrt(dist2(inst.nodes[te.child], inst.nodes[te.parent])));
    x.power = std::min(power_constant(inst) *
                           std::pow(std::ldexp(1.0, x.cls), inst.params.alpha),
                       inst.params.p_max);
    by_class[x.cls].push_back(e);
  }
  const double log2n = std::log2(static_cast<double>(n));
  if (sched.classes.size() != by_class.size()) {
    rep.fail("sched-class", "class count differs from the length partition");
  } else {
    std::size_t ci = 0;
    for (const auto& [cls, members] : by_class) {
      const ClassRun& run = sched.classes[ci++];
      const double reach = std::ldexp(1.0, cls + 1);
      const double reach2 = reach * reach;
      std::size_t k = 0;
      for (NodeId v = 0; v < n; ++v) {
        std::size_t c = 0;
        for (std::size_t e : members) {
          if (dist2(inst.nodes[v], inst.nodes[expect[e].sender]) <= reach2 ||
              dist2(inst.nodes[v], inst.nodes[expect[e].receiver]) <= reach2) {
            ++c;
          }
        }
        k = std::max(k, c);
      }
      if (run.index != cls || run.links != members.size() || run.k != k ||
          run.power != expect[members.front()].power ||
          run.budget != ceil_slots(inst.broadcast.rounds_factor * static_cast<double>(k) *
                                   log2n)) {
        rep.fail("sched-class", "class " + std::to_string(cls) + " bookkeeping differs");
      }
      if (run.slots_used > run.budget) {
        rep.fail("sched-class-budget", "class " + std::to_string(cls));
      }
      rep.info["class" + std::to_string(cls) + "_k"] = static_cast<double>(k);
    }
  }

  if (sched.slots.size() != trace.slots.size() || sched.slots_total != sched.slots.size()) {
    rep.fail("sched-slot-alignment", "recorded slots do not match the trace length");
  }

  std::vector<std::uint32_t> first_seen(tree.edges.size(), 0);
  std::vector<Link> links;
  for (std::size_t s = 0; s < sched.slots.size() && s < trace.slots.size(); ++s) {
    const SlotRecord& rec = trace.slots[s];
    links.clear();
    for (const SchedLink& l : sched.slots[s]) {
      if (l.edge >= tree.edges.size()) {
        rep.fail("sched-edge-id", "slot " + std::to_string(s));
        continue;
      }
      const Expect& x = expect[l.edge];
      if (l.sender != x.sender || l.receiver != x.receiver || l.power != x.power) {
        rep.fail("sched-link", "slot " + std::to_string(s) + ", edge " + std::to_string(l.edge));
      }
      bool found = false;
      for (const Delivery& d : rec.deliveries) {
        if (d.sender == l.sender && d.receiver == l.receiver &&
            d.payload.kind == PayloadKind::sched &&
            d.payload.id == l.receiver &&
            static_cast<std::size_t>(d.payload.value) == l.edge) {
          found = true;
          break;
        }
      }
      if (!found) {
        rep.fail("sched-delivery", "slot " + std::to_string(s) + ", edge " +
                                       std::to_string(l.edge) + " not delivered in the trace");
      }
      if (first_seen[l.edge] == 0) first_seen[l.edge] = static_cast<std::uint32_t>(s) + 1;
      links.push_back({l.sender, l.receiver, l.power});
    }
    // Each recorded slot must stand on its own under the threshold test.
    if (!links.empty() && !feasible(links, inst)) {
      ++rep.sinr_violations;
      rep.fail("sched-infeasible-slot", "slot " + std::to_string(s));
    }
  }

  std::uint32_t completion = 0;
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    if (first_seen[e] == 0) {
      rep.fail("sched-coverage", "edge " + std::to_string(e) + " never succeeded");
    }
    if (first_seen[e] != sched.first_success[e]) {
      rep.fail("sched-first-success", "edge " + std::to_string(e));
    }
    completion = std::max(completion, first_seen[e]);
  }
  if (completion != sched.completion_slot) {
    rep.fail("sched-completion", "recorded completion slot differs");
  }

  rep.bounds["sched_slots"] = {static_cast<double>(sched.completion_slot),
                               budget_factor * inst.broadcast.rounds_factor * derived.mu *
                                   log2n};
  rep.info["sched_slots_total"] = static_cast<double>(sched.slots_total);
  return rep;
}

}  // namespace mstsinr
