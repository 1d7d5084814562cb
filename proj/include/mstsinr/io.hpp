#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mstsinr/engine.hpp"
#include "mstsinr/nnt.hpp"
#include "mstsinr/schedule.hpp"
#include "mstsinr/verify.hpp"

namespace mstsinr::io {

// FNV-1a 64 over a canonical rendering of the instance (parameters and
// normalized coordinates). Stamped into traces and run bundles so an audit
// can refuse mismatched artifacts.
std::string instance_hash(const Instance& inst);

std::string read_file(const std::string& path);
// Writes via a temporary file in the same directory plus rename, so partial
// files never appear under the final name.
void write_file_atomic(const std::string& path, const std::string& content);

// Instance files hold coordinates as stored by the generator; loading
// normalizes and validates, so saving an already normalized instance and
// reloading it is the identity.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

// Trace: one header line, then one line per slot.
std::string trace_to_ndjson(const Trace& trace);
Trace trace_from_ndjson(const std::string& text);

struct RunBundle {
  std::string instance_hash;
  std::uint64_t seed = 0;
  PipelineResult run;
};

std::string run_to_json(const RunBundle& bundle);
RunBundle run_from_json(const std::string& text);

std::string tree_to_json(const TreeResult& tree);
TreeResult tree_from_json(const std::string& text);

// The schedule export: a top-level array of slots, each a list of
// [sender, receiver, power].
std::string schedule_to_json(const ScheduleResult& sched);

struct SchedBundle {
  std::string instance_hash;
  std::vector<std::uint8_t> parent_sends;
  ScheduleResult result;
};

std::string sched_run_to_json(const SchedBundle& bundle);
SchedBundle sched_run_from_json(const std::string& text);

std::string audit_to_json(const AuditReport& report);

struct MetricsRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  int d = 0;
  double mu = 0.0;
  double cost = 0.0;
  double mst_cost = 0.0;
  double ratio = 0.0;
  std::uint32_t slots_total = 0;
  std::uint32_t slots_domset = 0;
  std::uint32_t slots_cd = 0;
  std::uint32_t slots_bcast = 0;
  std::uint32_t slots_bp = 0;
  std::uint32_t sched_slots = 0;
};

std::string csv_header();
std::string csv_row(const MetricsRow& row);

}  // namespace mstsinr::io
