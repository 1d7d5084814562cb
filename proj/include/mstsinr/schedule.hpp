#pragma once

#include <cstdint>
#include <vector>

#include "mstsinr/engine.hpp"
#include "mstsinr/nnt.hpp"
#include "mstsinr/rng.hpp"
#include "mstsinr/types.hpp"

namespace mstsinr {

// Length class of a link: class 1 holds lengths in (1/2, 2] so the normalized
// minimum length 1 has a home, class i >= 2 holds (2^(i-1), 2^i]. A length
// that is exactly a power of two belongs to the class it closes.
int length_class(double length);

struct SchedLink {
  NodeId sender = 0;
  NodeId receiver = 0;
  double power = 0.0;
  std::size_t edge = 0;  // index into the scheduled tree's edge list

  friend bool operator==(const SchedLink&, const SchedLink&) = default;
};

struct ClassRun {
  int index = 0;
  double nominal_length = 0.0;  // 2^index
  double power = 0.0;
  std::size_t links = 0;
  std::size_t k = 0;  // max class links with an endpoint within 2^(index+1) of any node
  std::uint32_t budget = 0;
  std::uint32_t slots_used = 0;
};

// One slot entry per simulated slot (empty when nothing succeeded), so slot
// indices line up with the engine trace. A recorded slot lists only the links
// that succeeded; re-running exactly those senders can only raise every SINR,
// so each recorded set is feasible on its own.
struct ScheduleResult {
  std::vector<std::vector<SchedLink>> slots;
  std::vector<ClassRun> classes;
  std::uint32_t slots_total = 0;
  std::uint32_t completion_slot = 0;            // 1-based slot of the last first success
  std::vector<std::uint32_t> first_success;     // per edge, 1-based; 0 = never
  std::vector<std::size_t> unscheduled;         // edge indices that never succeeded
  bool ok = false;
};

// Schedules one transmission per tree edge. Edges are partitioned into length
// classes, classes run sequentially in increasing order, and within a class
// every pending link's sender fires with probability 1/K per slot at the
// class power min(c' * (2^i)^alpha, p_max). A sender with several pending
// links sends only the lowest-indexed one. `parent_sends[e]` orients edge e.
ScheduleResult schedule_tree(Engine& engine, RngPool& rngs, const TreeResult& tree,
                             const std::vector<std::uint8_t>& parent_sends);

}  // namespace mstsinr
