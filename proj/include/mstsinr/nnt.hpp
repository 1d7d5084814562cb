#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mstsinr/engine.hpp"
#include "mstsinr/geometry.hpp"
#include "mstsinr/primitives.hpp"
#include "mstsinr/rng.hpp"
#include "mstsinr/types.hpp"

namespace mstsinr {

// Ranks order nodes totally: compare by value, break ties by id. Children
// always point at strictly higher ranks, which is what makes the assembled
// parent structure acyclic.
inline bool rank_less(double av, NodeId ai, double bv, NodeId bi) {
  return av < bv || (av == bv && ai < bi);
}

struct BpPhase {
  int index = 0;  // distance scale is 2^index
  double d = 0.0;
  double power = 0.0;
  std::vector<NodeId> members;
  BroadcastReport report;
};

// Ball-parenting forest: in phase i the surviving nodes broadcast at range
// 2^i and every node adopts the highest rank it heard (or stays put if its
// own rank wins). Nodes that picked a parent drop out; survivors carry on at
// the doubled scale.
struct BpResult {
  std::vector<std::pair<NodeId, NodeId>> edges;  // child -> parent
  std::vector<int> edge_phase;                   // phase index per edge
  std::vector<NodeId> roots;                     // ascending
  std::vector<BpPhase> phases;
  bool ok = false;
};

BpResult nnt_sinr_bp(Engine& engine, RngPool& rngs, std::span<const NodeId> members,
                     const std::vector<double>& rank_value, const DerivedMetrics& derived);

// Cascading-dissemination tree: a rank wave starts at the sink (rank 1) and
// every node, on its first accepted message, draws a rank strictly below the
// sender's and makes that sender its parent. First-time receivers form the
// next wavefront.
struct CdResult {
  std::vector<std::pair<NodeId, NodeId>> edges;  // child -> parent
  std::vector<double> rank;                      // by NodeId; members only
  std::vector<std::vector<NodeId>> louder;       // by NodeId: accepted senders
                                                 // ranked above the node
  std::vector<NodeId> unreached;
  int diameter = -1;  // hop diameter of the wave graph over the members
  std::uint32_t waves_run = 0;
  std::vector<BroadcastReport> reports;
  bool ok = false;
};

CdResult nnt_sinr_cd(Engine& engine, RngPool& rngs, std::span<const NodeId> members,
                     NodeId sink, double radius);

struct TreeEdge {
  NodeId child = 0;
  NodeId parent = 0;
  std::string origin;  // "t1", "f1", or "root-link"
};

struct TreeResult {
  std::vector<TreeEdge> edges;
  NodeId sink = 0;
  double cost = 0.0;
  std::uint32_t slots_used = 0;  // charged accounting, see StageSlots
};

struct StageSlots {
  std::uint32_t domset_actual = 0;
  std::uint32_t domset_charged = 0;
  std::uint32_t cd = 0;
  std::uint32_t rank_bcast = 0;
  std::uint32_t bp = 0;

  // The budgeted total: the dominating-set stage enters at its charged cost,
  // every other stage at the slots it actually ran.
  std::uint32_t total_charged() const { return domset_charged + cd + rank_bcast + bp; }
};

// The full pipeline: dominating set at r_max/conn_c, rank wave across it,
// rank dissemination to everyone else, ball-parenting forest over the rest,
// and root links back into the dominating set.
struct PipelineResult {
  TreeResult tree;
  DomResult dom;
  CdResult cd;
  BroadcastReport rank_bcast;
  bool has_rank_stage = false;  // false when the dominating set covers all nodes
  BpResult bp;
  StageSlots stage_slots;
  std::vector<double> rank;      // final rank per node
  std::vector<NodeId> dom_link;  // by NodeId: best-ranked dominator heard
  bool ok = false;
  std::vector<std::string> failures;
};

PipelineResult mst_sinr(Engine& engine, RngPool& rngs, const DerivedMetrics& derived);

// Sum of edge lengths, accumulated in ascending length order so that equal
// edge multisets produce bit-identical totals.
double tree_cost(std::span<const TreeEdge> edges, const Instance& inst);

}  // namespace mstsinr
