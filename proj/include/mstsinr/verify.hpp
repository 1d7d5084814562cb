#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mstsinr/engine.hpp"
#include "mstsinr/geometry.hpp"
#include "mstsinr/nnt.hpp"
#include "mstsinr/schedule.hpp"
#include "mstsinr/types.hpp"

namespace mstsinr {

// Exact Euclidean MST computed two independent ways: edge-sort with a
// union-find, and nearest-frontier growth. Each method sums its own edge
// lengths in ascending order; the two costs must agree to 1e-9.
struct MstResult {
  std::vector<std::pair<NodeId, NodeId>> edges;  // from the edge-sort method
  double cost = 0.0;                             // edge-sort method
  double cost_frontier = 0.0;                    // frontier-growth method
};

MstResult exact_mst(const std::vector<Point>& pts);

// cost(tree) / cost(MST). Throws std::invalid_argument if the edges do not
// form a spanning tree of the instance.
double approximation_ratio(const TreeResult& tree, const Instance& inst);

struct AuditReport {
  int sinr_violations = 0;
  std::vector<std::pair<std::string, std::string>> invariant_failures;  // (name, context)
  double cost_ratio = 0.0;
  std::uint32_t slots_used = 0;
  // name -> (measured, budget); passing means measured <= budget
  std::map<std::string, std::pair<double, double>> bounds;
  // unbudgeted measurements, recorded for reporting only
  std::map<std::string, double> info;

  bool ok() const;
  void fail(const std::string& name, const std::string& context);
};

// Replays a pipeline run against the physical model and the claimed
// invariants: every slot's deliveries from first principles, acceptance
// radii, phase separations, per-phase cost chains, dominating-set properties,
// tree validity with rank monotonicity, the approximation ratio, and the slot
// budget. Reports, never throws.
AuditReport audit_run(const Instance& inst, const DerivedMetrics& derived, const Trace& trace,
                      const PipelineResult& run, double budget_factor);

// Replays a schedule: trace-level delivery checks, class bookkeeping,
// standalone feasibility of every recorded slot, full link coverage, and the
// completion budget.
AuditReport audit_schedule(const Instance& inst, const DerivedMetrics& derived,
                           const TreeResult& tree,
                           const std::vector<std::uint8_t>& parent_sends,
                           const ScheduleResult& sched, const Trace& trace,
                           double budget_factor);

}  // namespace mstsinr
