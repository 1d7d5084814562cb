#include "mstsinr/geometry.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

#include "mstsinr/kernels.hpp"
#include "mstsinr/sinr.hpp"

namespace mstsinr {

std::vector<Point> normalize(std::vector<Point> pts) {
  if (pts.size() < 2) {
    throw std::invalid_argument("normalize: need at least two points");
  }
  const PointsSoA soa(pts);
  double min_d2 = 0.0, max_d2 = 0.0;
  kern::minmax_pair_dist2(soa.xs.data(), soa.ys.data(), soa.size(), &min_d2, &max_d2);
  const double d_min = std::sqrt(min_d2);
  if (!(d_min > 0.0)) {
    throw std::invalid_argument("normalize: duplicate points (zero minimum distance)");
  }
  // Already normalized input passes through bit-for-bit; rescaling by a
  // factor within rounding of 1 would only smear the last bits and change
  // the instance hash on every save/load cycle.
  if (std::fabs(d_min - 1.0) <= kGeomTol) return pts;
  for (Point& p : pts) {
    p.x /= d_min;
    p.y /= d_min;
  }
  return pts;
}

void validate_instance(const Instance& inst) {
  const SinrParams& p = inst.params;
  if (inst.nodes.size() < 2) throw std::invalid_argument("instance: need at least two nodes");
  if (!(p.alpha > 2.0)) throw std::invalid_argument("instance: alpha must exceed 2");
  if (!(p.beta > 1.0)) throw std::invalid_argument("instance: beta must exceed 1");
  if (!(p.noise > 0.0)) throw std::invalid_argument("instance: noise must be positive");
  if (!(p.p_max > 0.0)) throw std::invalid_argument("instance: p_max must be positive");
  if (!(p.conn_c >= 1.0)) throw std::invalid_argument("instance: conn_c must be at least 1");
  const BroadcastConfig& b = inst.broadcast;
  if (!(b.gamma >= b.gamma_prime && b.gamma_prime >= 1.0)) {
    throw std::invalid_argument("instance: require gamma >= gamma_prime >= 1");
  }
  if (!(b.rounds_factor > 0.0)) throw std::invalid_argument("instance: rounds_factor must be positive");

  const PointsSoA soa(inst.nodes);
  double min_d2 = 0.0, max_d2 = 0.0;
  kern::minmax_pair_dist2(soa.xs.data(), soa.ys.data(), soa.size(), &min_d2, &max_d2);
  const double d_min = std::sqrt(min_d2);
  if (std::abs(d_min - 1.0) > kGeomTol) {
    throw std::invalid_argument("instance: not normalized (min pairwise distance " +
                                std::to_string(d_min) + ", expected 1)");
  }
}

AdjacencyList disk_graph(const std::vector<Point>& pts, double r) {
  const std::size_t n = pts.size();
  const double r2 = r * r;
  const PointsSoA soa(pts);
  AdjacencyList adj(n);
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) {
    kern::squared_dists(soa.xs.data(), soa.ys.data(), n, pts[i].x, pts[i].y, d2.data());
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && d2[j] <= r2) adj[i].push_back(static_cast<NodeId>(j));
    }
  }
  return adj;
}

std::vector<int> bfs_hops(const AdjacencyList& adj, NodeId src) {
  std::vector<int> hops(adj.size(), -1);
  std::deque<NodeId> queue{src};
  hops[src] = 0;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : adj[u]) {
      if (hops[v] < 0) {
        hops[v] = hops[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return hops;
}

bool is_connected(const AdjacencyList& adj) {
  if (adj.empty()) return true;
  const auto hops = bfs_hops(adj, 0);
  for (int h : hops) {
    if (h < 0) return false;
  }
  return true;
}

std::optional<int> graph_diameter(const AdjacencyList& adj) {
  int diameter = 0;
  for (NodeId s = 0; s < adj.size(); ++s) {
    const auto hops = bfs_hops(adj, s);
    for (int h : hops) {
      if (h < 0) return std::nullopt;
      if (h > diameter) diameter = h;
    }
  }
  return diameter;
}

DerivedMetrics derive_metrics(const Instance& inst) {
  validate_instance(inst);
  DerivedMetrics m;
  const PointsSoA soa(inst.nodes);
  double min_d2 = 0.0, max_d2 = 0.0;
  kern::minmax_pair_dist2(soa.xs.data(), soa.ys.data(), soa.size(), &min_d2, &max_d2);
  m.d_max = std::sqrt(max_d2);
  m.mu = std::log2(m.d_max);
  m.r_max = max_range(inst.params);
  if (m.r_max > m.d_max + kGeomTol) {
    throw std::invalid_argument(
        "instance: transmission range exceeds network extent (r_max " +
        std::to_string(m.r_max) + " > d_max " + std::to_string(m.d_max) +
        "); lower p_max or spread the nodes");
  }
  const double r_conn = m.r_max / inst.params.conn_c;
  const AdjacencyList conn_graph = disk_graph(inst.nodes, r_conn);
  if (!is_connected(conn_graph)) {
    throw std::invalid_argument(
        "instance: disk graph at range r_max/conn_c = " + std::to_string(r_conn) +
        " is disconnected; the protocol's connectivity assumption fails");
  }
  const auto diam = graph_diameter(disk_graph(inst.nodes, m.r_max));
  MSTSINR_ASSERT(diam.has_value(), "derive_metrics: graph at r_max disconnected after conn check");
  m.diameter = *diam;
  return m;
}

}  // namespace mstsinr
