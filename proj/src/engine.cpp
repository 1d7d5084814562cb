#include "mstsinr/engine.hpp"

#include <stdexcept>
#include <string>

namespace mstsinr {

Engine::Engine(const Instance& inst, std::string instance_hash) : inst_(&inst) {
  trace_.instance_hash = std::move(instance_hash);
  trace_.seed = inst.seed;
  trace_.n = static_cast<std::uint32_t>(inst.n());
}

const SlotRecord& Engine::run_slot(std::span<const Decision> decisions) {
  const std::size_t n = inst_->n();
  if (decisions.size() != n) {
    throw std::invalid_argument("run_slot: expected one decision per node");
  }
  // Validate before mutating the trace so a malformed slot leaves no record.
  for (NodeId v = 0; v < n; ++v) {
    const Decision& d = decisions[v];
    if (d.action == Action::transmit) {
      if (!(d.power > 0.0) || d.power > inst_->params.p_max) {
        throw std::invalid_argument("run_slot: node " + std::to_string(v) +
                                    " transmit power outside (0, p_max]");
      }
    } else if (d.power != 0.0) {
      throw std::invalid_argument("run_slot: node " + std::to_string(v) +
                                  " has power set without transmitting");
    }
  }

  SlotRecord rec;
  rec.slot = static_cast<std::uint32_t>(trace_.slots.size());
  txs_.clear();
  for (NodeId v = 0; v < n; ++v) {
    if (decisions[v].action == Action::transmit) {
      txs_.push_back({v, decisions[v].power});
      rec.transmissions.push_back({v, decisions[v].power, decisions[v].payload});
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (decisions[v].action != Action::listen) continue;
    const ReceiverOutcome out = evaluate_receiver(v, txs_, *inst_);
    rec.total_power_at.emplace_back(v, out.total_power);
    if (out.decoded) {
      // Replay the payload from the sender's own record; a delivery carries
      // exactly what was transmitted.
      const Payload* pl = nullptr;
      for (const TxRecord& t : rec.transmissions) {
        if (t.sender == out.sender) {
          pl = &t.payload;
          break;
        }
      }
      MSTSINR_ASSERT(pl != nullptr, "run_slot: decoded sender not in transmission set");
      rec.deliveries.push_back({out.sender, v, *pl});
    }
  }
  trace_.slots.push_back(std::move(rec));
  return trace_.slots.back();
}

void Engine::mark(std::string label) {
  trace_.marks.push_back({static_cast<std::uint32_t>(trace_.slots.size()), std::move(label)});
}

ProtocolRun run_protocol(Engine& engine, Protocol& proto, std::uint32_t budget) {
  std::vector<Decision> decisions(engine.instance().n());
  std::uint32_t used = 0;
  while (!proto.done() && used < budget) {
    decisions.assign(decisions.size(), Decision{});
    proto.decide(used, decisions);
    const SlotRecord& rec = engine.run_slot(decisions);
    proto.observe(rec);
    ++used;
  }
  return {proto.done(), used};
}

}  // namespace mstsinr
