#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mstsinr/io.hpp"
#include "mstsinr/nnt.hpp"
#include "mstsinr/schedule.hpp"
#include "mstsinr/types.hpp"
#include "mstsinr/verify.hpp"

namespace mstsinr {

struct ExperimentSpec {
  std::string generator = "uniform-square";  // uniform-square, grid, clusters
  std::size_t n = 64;
  double area_side = 0.0;  // 0 selects 2*sqrt(n), about one node per 4 area units
  int clusters = 4;
  SinrParams params;
  BroadcastConfig broadcast;
  std::vector<std::uint64_t> seeds;
  double budget_factor = 8.0;
};

std::string spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const std::string& text);

// Raw coordinates, before normalization. uniform-square rejects candidates
// closer than 1 to a placed point (bounded retries); grid returns the
// ceil(sqrt(n))^2 unit lattice; clusters draws Gaussian blobs around uniform
// centers with the same separation guard.
std::vector<Point> generate_points(const ExperimentSpec& spec, std::uint64_t seed);

// Instance with spec parameters and raw coordinates, not yet normalized.
Instance assemble_instance(const ExperimentSpec& spec, std::uint64_t seed,
                           std::vector<Point> pts);

// Generated, normalized, validated.
Instance make_instance(const ExperimentSpec& spec, std::uint64_t seed);

struct SchedArtifacts {
  std::vector<std::uint8_t> parent_sends;
  ScheduleResult result;
  Trace trace;
  AuditReport audit;
};

struct RunArtifacts {
  Instance inst;
  DerivedMetrics derived;
  std::string hash;
  PipelineResult pipeline;
  Trace trace;
  AuditReport audit;
  std::vector<SchedArtifacts> schedules;  // two random orientation assignments
  io::MetricsRow row;
  bool ok = false;
};

// One full run on an already normalized instance: pipeline, audit, and two
// audited schedules whose orientation and coin streams derive from inst.seed.
RunArtifacts run_instance(const Instance& inst, double budget_factor);

// Generates the instance for the seed, then runs it.
RunArtifacts run_one(const ExperimentSpec& spec, std::uint64_t seed);

// One schedule of an existing tree. index selects the orientation draw (the
// experiment runs indices 0 and 1), so artifacts match a full run byte for byte.
SchedArtifacts schedule_one(const Instance& inst, const TreeResult& tree,
                            std::uint64_t seed, std::uint64_t index,
                            double budget_factor);

// Writes instance/trace/run/tree/audit plus per-schedule files under dir.
void write_run_artifacts(const std::string& dir, const RunArtifacts& art);

struct SeedOutcome {
  std::uint64_t seed = 0;
  bool ok = false;
  bool has_row = false;
  std::string error;
  io::MetricsRow row;
};

struct ExperimentOutcome {
  std::vector<SeedOutcome> seeds;
  std::string csv;
  std::string aggregate_json;
  bool all_ok = false;
};

// Runs every seed, isolating per-seed failures. When out_dir is nonempty,
// writes per-seed artifacts plus metrics.csv and aggregate.json under it.
ExperimentOutcome run_experiment(const ExperimentSpec& spec, const std::string& out_dir);

}  // namespace mstsinr
