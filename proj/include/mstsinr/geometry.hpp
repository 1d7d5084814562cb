#pragma once

#include <optional>
#include <vector>

#include "mstsinr/types.hpp"

namespace mstsinr {

using AdjacencyList = std::vector<std::vector<NodeId>>;

// Structure-of-arrays coordinate view for the dense kernels.
struct PointsSoA {
  std::vector<double> xs, ys;

  PointsSoA() = default;
  explicit PointsSoA(const std::vector<Point>& pts) {
    xs.reserve(pts.size());
    ys.reserve(pts.size());
    for (const Point& p : pts) {
      xs.push_back(p.x);
      ys.push_back(p.y);
    }
  }
  std::size_t size() const { return xs.size(); }
};

// Rescales the point set so the minimum pairwise distance becomes 1.
// Throws std::invalid_argument for fewer than two points or duplicates.
std::vector<Point> normalize(std::vector<Point> pts);

// Shape and parameter validation: n >= 2, normalized spacing, positive
// parameters in their required ranges. Throws std::invalid_argument.
void validate_instance(const Instance& inst);

// Disk graph: undirected edge iff d(u, v) <= r, boundary inclusive.
AdjacencyList disk_graph(const std::vector<Point>& pts, double r);

// Hop diameter; std::nullopt when the graph is disconnected.
std::optional<int> graph_diameter(const AdjacencyList& adj);

// BFS hop distances from src; unreachable nodes get -1.
std::vector<int> bfs_hops(const AdjacencyList& adj, NodeId src);

bool is_connected(const AdjacencyList& adj);

// Computes d_max, mu, r_max and the hop diameter at range r_max.
// Rejects instances whose range exceeds the network extent (r_max > d_max)
// or whose disk graph at r_max/conn_c is disconnected, with diagnostics.
DerivedMetrics derive_metrics(const Instance& inst);

}  // namespace mstsinr
