#include "mstsinr/nnt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mstsinr {

namespace {

double clamped_power(const Instance& inst, double range) {
  return std::min(power_constant(inst) * std::pow(range, inst.params.alpha),
                  inst.params.p_max);
}

}  // namespace

double tree_cost(std::span<const TreeEdge> edges, const Instance& inst) {
  std::vector<double> lengths;
  lengths.reserve(edges.size());
  for (const TreeEdge& e : edges) {
    lengths.push_back(std::sqrt(dist2(inst.nodes[e.child], inst.nodes[e.parent])));
  }
  std::sort(lengths.begin(), lengths.end());
  double cost = 0.0;
  for (double l : lengths) cost += l;
  return cost;
}

BpResult nnt_sinr_bp(Engine& engine, RngPool& rngs, std::span<const NodeId> members,
                     const std::vector<double>& rank_value, const DerivedMetrics& derived) {
  const Instance& inst = engine.instance();
  BpResult res;
  res.ok = true;
  std::vector<NodeId> current(members.begin(), members.end());
  std::sort(current.begin(), current.end());

  // Scales stop at the largest power of two within the physical reach; the
  // power clamp keeps every phase decodable across its nominal distance.
  const int i_max = floor_log2_tol(derived.r_max);
  std::vector<double> best_val(inst.n(), 0.0);
  std::vector<NodeId> best_id(inst.n(), 0);

  for (int i = 1; i <= i_max && current.size() > 1; ++i) {
    BpPhase phase;
    phase.index = i;
    phase.d = std::ldexp(1.0, i);
    phase.power = clamped_power(inst, phase.d);
    phase.members = current;
    for (NodeId v : current) {
      best_val[v] = rank_value[v];
      best_id[v] = v;
    }
    BroadcastRequest req;
    req.label = "bp.phase" + std::to_string(i);
    req.senders = current;
    req.receivers = current;
    req.r_b = phase.d;
    req.power = phase.power;
    req.payload_of = [&](NodeId v) { return Payload{PayloadKind::rank, v, rank_value[v]}; };
    req.on_accept = [&](const AcceptRecord& ar, const Payload& pl) {
      const NodeId v = ar.receiver;
      if (rank_less(best_val[v], best_id[v], pl.value, pl.id)) {
        best_val[v] = pl.value;
        best_id[v] = pl.id;
      }
    };
    phase.report = local_broadcast(engine, rngs, req);
    res.ok = res.ok && phase.report.goal_met;

    std::vector<NodeId> next;
    for (NodeId v : current) {
      if (best_id[v] == v) {
        next.push_back(v);
      } else {
        res.edges.emplace_back(v, best_id[v]);
        res.edge_phase.push_back(i);
      }
    }
    res.phases.push_back(std::move(phase));
    current = std::move(next);
  }
  res.roots = std::move(current);
  return res;
}

CdResult nnt_sinr_cd(Engine& engine, RngPool& rngs, std::span<const NodeId> members,
                     NodeId sink, double radius) {
  const Instance& inst = engine.instance();
  CdResult res;
  res.rank.assign(inst.n(), 0.0);
  res.louder.assign(inst.n(), {});

  std::vector<NodeId> mem(members.begin(), members.end());
  std::sort(mem.begin(), mem.end());
  std::vector<char> is_member(inst.n(), 0), ranked(inst.n(), 0);
  for (NodeId v : mem) is_member[v] = 1;
  MSTSINR_ASSERT(!mem.empty() && is_member[sink], "cd: sink must be a member");

  // The wave needs the members connected at the wave radius; if they are
  // not, no slot schedule can reach the far side, so report instead of
  // burning the budget.
  std::vector<Point> pts;
  pts.reserve(mem.size());
  for (NodeId v : mem) pts.push_back(inst.nodes[v]);
  const auto diam = graph_diameter(disk_graph(pts, radius));
  if (!diam) {
    for (NodeId v : mem) {
      if (v != sink) res.unreached.push_back(v);
    }
    return res;
  }
  res.diameter = *diam;

  const double power = clamped_power(inst, radius);
  ranked[sink] = 1;
  res.rank[sink] = 1.0;
  std::vector<NodeId> first_parent(inst.n(), 0);
  std::vector<NodeId> wave{sink};
  std::vector<NodeId> newly;
  const std::uint32_t max_waves = 1 + 2 * static_cast<std::uint32_t>(*diam);
  bool all_goals = true;

  for (std::uint32_t w = 0; w < max_waves && !wave.empty(); ++w) {
    newly.clear();
    BroadcastRequest req;
    req.label = "cd.wave" + std::to_string(w);
    req.senders = wave;
    req.receivers = mem;
    req.r_b = radius;
    req.power = power;
    req.payload_of = [&](NodeId v) { return Payload{PayloadKind::rank, v, res.rank[v]}; };
    req.on_accept = [&](const AcceptRecord& ar, const Payload& pl) {
      const NodeId v = ar.receiver;
      if (!ranked[v]) {
        ranked[v] = 1;
        res.rank[v] = rngs.at(v).below(pl.value);
        first_parent[v] = pl.id;
        newly.push_back(v);
      }
      if (rank_less(res.rank[v], v, pl.value, pl.id)) {
        res.louder[v].push_back(pl.id);
      }
    };
    BroadcastReport rep = local_broadcast(engine, rngs, req);
    all_goals = all_goals && rep.goal_met;
    res.reports.push_back(std::move(rep));
    res.waves_run = w + 1;
    std::sort(newly.begin(), newly.end());
    wave = newly;
  }

  for (NodeId v : mem) {
    if (!ranked[v]) {
      res.unreached.push_back(v);
    } else if (v != sink) {
      res.edges.emplace_back(v, first_parent[v]);
    }
    auto& l = res.louder[v];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  res.ok = all_goals && res.unreached.empty();
  return res;
}

PipelineResult mst_sinr(Engine& engine, RngPool& rngs, const DerivedMetrics& derived) {
  const Instance& inst = engine.instance();
  PipelineResult res;
  const double r_c = derived.r_max / inst.params.conn_c;
  if (2.0 * r_c > derived.r_max * (1.0 + kGeomTol)) {
    res.failures.push_back(
        "conn_c below 2: the rank wave radius 2*r_max/conn_c exceeds the reach r_max");
    return res;
  }

  std::vector<NodeId> everyone(inst.n());
  std::iota(everyone.begin(), everyone.end(), NodeId{0});

  engine.mark("stage.domset");
  const std::uint32_t s0 = engine.slots_used();
  res.dom = const_dominating_set(engine, rngs, everyone, r_c);
  res.stage_slots.domset_actual = engine.slots_used() - s0;
  res.stage_slots.domset_charged = res.dom.charged_slots;
  if (!res.dom.ok) res.failures.push_back("dominating set incomplete within its round budget");
  MSTSINR_ASSERT(!res.dom.dom.empty(), "pipeline: empty dominating set");

  engine.mark("stage.cd");
  const NodeId sink = res.dom.dom.front();
  const std::uint32_t s1 = engine.slots_used();
  res.cd = nnt_sinr_cd(engine, rngs, res.dom.dom, sink, 2.0 * r_c);
  res.stage_slots.cd = engine.slots_used() - s1;
  if (!res.cd.ok) {
    res.failures.push_back(res.cd.diameter < 0 ? "rank wave graph disconnected"
                                               : "rank wave left members unranked");
  }
  res.rank = res.cd.rank;
  res.dom_link.assign(inst.n(), 0);

  std::vector<char> in_dom(inst.n(), 0);
  for (NodeId v : res.dom.dom) in_dom[v] = 1;
  std::vector<NodeId> rest;
  for (NodeId v = 0; v < inst.n(); ++v) {
    if (!in_dom[v]) rest.push_back(v);
  }
  res.has_rank_stage = !rest.empty();

  std::vector<TreeEdge> edges;
  for (const auto& [c, p] : res.cd.edges) edges.push_back({c, p, "t1"});

  if (!rest.empty()) {
    engine.mark("stage.rank");
    std::vector<double> heard_val(inst.n(), 0.0);
    std::vector<NodeId> heard_src(inst.n(), 0);
    std::vector<char> heard(inst.n(), 0);
    BroadcastRequest req;
    req.label = "rank.bcast";
    req.senders = res.dom.dom;
    req.receivers = rest;
    req.r_b = r_c;
    req.power = clamped_power(inst, r_c);
    req.payload_of = [&](NodeId v) { return Payload{PayloadKind::rank, v, res.rank[v]}; };
    req.on_accept = [&](const AcceptRecord& ar, const Payload& pl) {
      const NodeId v = ar.receiver;
      if (!heard[v] || rank_less(heard_val[v], heard_src[v], pl.value, pl.id)) {
        heard[v] = 1;
        heard_val[v] = pl.value;
        heard_src[v] = pl.id;
      }
    };
    const std::uint32_t s2 = engine.slots_used();
    res.rank_bcast = local_broadcast(engine, rngs, req);
    res.stage_slots.rank_bcast = engine.slots_used() - s2;
    if (!res.rank_bcast.goal_met) res.failures.push_back("rank dissemination timed out");

    // Ranks are drawn after the broadcast, in ascending id order, strictly
    // below the best rank heard; the best sender becomes the fallback parent.
    std::vector<NodeId> bp_members;
    std::size_t missing = 0;
    for (NodeId v : rest) {
      if (!heard[v]) {
        ++missing;
        continue;
      }
      res.rank[v] = rngs.at(v).below(heard_val[v]);
      res.dom_link[v] = heard_src[v];
      bp_members.push_back(v);
    }
    if (missing > 0) {
      res.failures.push_back(std::to_string(missing) + " nodes heard no dominator rank");
    }

    engine.mark("stage.bp");
    const std::uint32_t s3 = engine.slots_used();
    res.bp = nnt_sinr_bp(engine, rngs, bp_members, res.rank, derived);
    res.stage_slots.bp = engine.slots_used() - s3;
    if (!res.bp.ok) res.failures.push_back("forest phase timed out");
    for (const auto& [c, p] : res.bp.edges) edges.push_back({c, p, "f1"});
    for (NodeId r : res.bp.roots) edges.push_back({r, res.dom_link[r], "root-link"});
  }

  res.tree.edges = std::move(edges);
  res.tree.sink = sink;
  res.tree.cost = tree_cost(res.tree.edges, inst);
  res.tree.slots_used = res.stage_slots.total_charged();
  res.ok = res.failures.empty();
  return res;
}

}  // namespace mstsinr
