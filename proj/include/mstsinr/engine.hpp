#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mstsinr/sinr.hpp"
#include "mstsinr/types.hpp"

namespace mstsinr {

// Slot-synchronous simulation core. Each slot every node either transmits,
// listens, or idles; a listener decodes at most one message, decided by the
// SINR threshold against the sum of all concurrent transmissions plus noise.
// The engine appends one immutable record per slot to a trace, which is the
// ground truth that protocols, exports, and the independent audit all share.

enum class Action : std::uint8_t { idle = 0, listen = 1, transmit = 2 };

// What a message carries. The simulator does not model bit-level encoding;
// a payload is a small tagged tuple that protocols interpret.
enum class PayloadKind : std::uint8_t {
  none = 0,
  contend = 1,   // leader contention: value is a drawn priority
  join = 2,      // leader announcement: sender has joined the dominating set
  rank = 3,      // rank dissemination and tree building: value is a rank
  sched = 4,     // link scheduling: id names the intended receiver
};

struct Payload {
  PayloadKind kind = PayloadKind::none;
  NodeId id = 0;
  double value = 0.0;

  friend bool operator==(const Payload&, const Payload&) = default;
};

struct Decision {
  Action action = Action::idle;
  double power = 0.0;
  Payload payload;
};

struct TxRecord {
  NodeId sender = 0;
  double power = 0.0;
  Payload payload;

  friend bool operator==(const TxRecord&, const TxRecord&) = default;
};

struct Delivery {
  NodeId sender = 0;
  NodeId receiver = 0;
  Payload payload;

  friend bool operator==(const Delivery&, const Delivery&) = default;
};

struct SlotRecord {
  std::uint32_t slot = 0;
  std::vector<TxRecord> transmissions;           // ascending sender id
  std::vector<Delivery> deliveries;              // ascending receiver id
  std::vector<std::pair<NodeId, double>> total_power_at;  // listeners, ascending id
};

struct PhaseMark {
  std::uint32_t slot = 0;  // index of the first slot after the mark
  std::string label;
};

struct Trace {
  std::string instance_hash;
  std::uint64_t seed = 0;
  std::uint32_t n = 0;
  std::vector<SlotRecord> slots;
  std::vector<PhaseMark> marks;
};

class Engine {
 public:
  Engine(const Instance& inst, std::string instance_hash);

  // Executes one slot. `decisions` holds one entry per node, indexed by id.
  // Throws std::invalid_argument before recording anything if a decision is
  // malformed (transmit power outside (0, p_max], or a listen/idle entry
  // carrying a nonzero power).
  const SlotRecord& run_slot(std::span<const Decision> decisions);

  // Labels the position between slots, e.g. the start of a protocol stage.
  void mark(std::string label);

  std::uint32_t slots_used() const { return static_cast<std::uint32_t>(trace_.slots.size()); }
  const Trace& trace() const { return trace_; }
  const Instance& instance() const { return *inst_; }

 private:
  const Instance* inst_;
  Trace trace_;
  std::vector<Transmission> txs_;
};

// A protocol drives the engine one slot at a time: fill in decisions, see the
// resulting slot record, and report completion. `decide` receives an all-idle
// decision vector sized to the node count.
class Protocol {
 public:
  virtual ~Protocol() = default;
  virtual bool done() const = 0;
  virtual void decide(std::uint32_t slot_in_phase, std::vector<Decision>& decisions) = 0;
  virtual void observe(const SlotRecord& rec) = 0;
};

struct ProtocolRun {
  bool completed = false;     // done() before the budget ran out
  std::uint32_t slots = 0;    // slots actually executed
};

// Runs `proto` until it reports done or `budget` slots have elapsed.
ProtocolRun run_protocol(Engine& engine, Protocol& proto, std::uint32_t budget);

}  // namespace mstsinr
