#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mstsinr/engine.hpp"
#include "mstsinr/rng.hpp"
#include "mstsinr/types.hpp"

namespace mstsinr {

// Largest number of members (self included) that any member of `members`
// sees within `radius`.
std::size_t density(std::span<const NodeId> members, double radius, const Instance& inst);

struct AcceptRecord {
  std::uint32_t slot = 0;
  NodeId sender = 0;
  NodeId receiver = 0;
};

// One local broadcast execution: who ran it, what it was budgeted, what it
// delivered. `accepted` lists every accepted delivery in slot order, so a
// re-audit can match each acceptance against the trace.
struct BroadcastReport {
  std::string label;
  double r_b = 0.0;
  double power = 0.0;
  double accept_radius = 0.0;
  std::size_t density_n = 0;
  std::uint32_t budget = 0;
  std::uint32_t slots_used = 0;
  bool goal_met = false;
  std::uint32_t high_interference_accepts = 0;
  std::vector<AcceptRecord> accepted;
  std::vector<std::pair<NodeId, NodeId>> unmet_pairs;
};

struct BroadcastRequest {
  std::string label;
  std::vector<NodeId> senders;    // ascending, unique
  std::vector<NodeId> receivers;  // ascending, unique; may overlap senders
  double r_b = 0.0;
  double power = 0.0;
  // Receivers accept a decoded message only from within this distance;
  // defaults to gamma * r_b.
  std::optional<double> accept_radius;
  std::function<Payload(NodeId)> payload_of;
  // Invoked for each accepted delivery, in slot order, before the report is
  // assembled. Optional.
  std::function<void(const AcceptRecord&, const Payload&)> on_accept;
};

// Random-access local broadcast. Every sender transmits independently each
// slot with probability 1 / N(senders, gamma * r_b); receivers listen
// whenever they are not transmitting. The goal is one accepted delivery for
// every sender-receiver pair within distance r_b. The run stops at the goal
// or after ceil(rounds_factor * N * log2 n) slots, whichever comes first;
// exhausting the budget with pairs outstanding is reported, never hidden.
BroadcastReport local_broadcast(Engine& engine, RngPool& rngs, const BroadcastRequest& req);

struct DomResult {
  std::vector<NodeId> dom;  // ascending
  std::uint32_t rounds = 0;
  std::uint32_t emulation_slots = 0;  // slots actually simulated
  std::uint32_t charged_slots = 0;    // slots charged to the caller's budget
  bool ok = false;
  std::vector<BroadcastReport> reports;
};

// Builds a dominating set of `members` at range r_c whose members are
// pairwise farther than r_c apart (whp): undecided nodes repeatedly draw
// priorities and contend over a local broadcast capped at r_c; local maxima
// join, joiners announce, and announced neighbors stand down. The emulation
// cost is recorded in full, but the charged cost is ceil(rounds_factor *
// log2 n) slots, the accounting under which the pipeline budget is stated.
DomResult const_dominating_set(Engine& engine, RngPool& rngs,
                               std::span<const NodeId> members, double r_c);

}  // namespace mstsinr
