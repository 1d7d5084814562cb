// Command line front end: generate instances, run the construction pipeline
// with audits and schedules, re-audit stored artifacts, and schedule stored
// trees. Exit status is nonzero whenever any audit or protocol goal fails.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mstsinr/experiment.hpp"
#include "mstsinr/geometry.hpp"
#include "mstsinr/io.hpp"

namespace {

using namespace mstsinr;

int cmd_gen(const std::string& config_path, const std::string& out_dir,
            const std::vector<std::uint64_t>& seed_override) {
  ExperimentSpec spec = spec_from_json(io::read_file(config_path));
  const std::vector<std::uint64_t>& seeds =
      seed_override.empty() ? spec.seeds : seed_override;
  if (seeds.empty()) {
    std::cerr << "gen: no seeds given (config seeds list empty and no --seed)\n";
    return 2;
  }
  int rc = 0;
  for (std::uint64_t seed : seeds) {
    try {
      std::vector<Point> raw = generate_points(spec, seed);
      Instance inst = assemble_instance(spec, seed, raw);
      // Reject instances that fail validation or are disconnected at r_max
      // over conn_c before they are written anywhere.
      Instance checked = inst;
      checked.nodes = normalize(std::move(checked.nodes));
      validate_instance(checked);
      derive_metrics(checked);
      const std::string path = out_dir + "/instances/seed_" + std::to_string(seed) + ".json";
      io::write_file_atomic(path, io::instance_to_json(inst));
      std::cout << "gen seed " << seed << ": wrote " << path << "\n";
    } catch (const std::exception& e) {
      std::cerr << "gen seed " << seed << ": rejected: " << e.what() << "\n";
      rc = 1;
    }
  }
  return rc;
}

void print_run_summary(const RunArtifacts& art) {
  std::cout << "seed " << art.inst.seed << ": n=" << art.inst.n()
            << " slots=" << art.row.slots_total << " cost_ratio=" << art.row.ratio
            << (art.ok ? " ok" : " FAIL") << "\n";
  for (const std::string& f : art.pipeline.failures) {
    std::cout << "  pipeline failure: " << f << "\n";
  }
  for (const auto& [name, ctx] : art.audit.invariant_failures) {
    std::cout << "  audit failure: " << name << ": " << ctx << "\n";
  }
  for (std::size_t k = 0; k < art.schedules.size(); ++k) {
    for (const auto& [name, ctx] : art.schedules[k].audit.invariant_failures) {
      std::cout << "  schedule " << k << " audit failure: " << name << ": " << ctx << "\n";
    }
  }
}

int cmd_run(const std::string& config_path, const std::string& instance_path,
            const std::string& out_dir, double budget_factor,
            const std::vector<std::uint64_t>& seed_override) {
  if (!config_path.empty()) {
    ExperimentSpec spec = spec_from_json(io::read_file(config_path));
    if (!seed_override.empty()) spec.seeds = seed_override;
    if (budget_factor > 0.0) spec.budget_factor = budget_factor;
    if (spec.seeds.empty()) {
      std::cerr << "run: no seeds given (config seeds list empty and no --seed)\n";
      return 2;
    }
    ExperimentOutcome outcome = run_experiment(spec, out_dir);
    for (const SeedOutcome& so : outcome.seeds) {
      if (so.has_row) {
        std::cout << "seed " << so.seed << ": slots=" << so.row.slots_total
                  << " cost_ratio=" << so.row.ratio << (so.ok ? " ok" : " FAIL") << "\n";
      } else {
        std::cout << "seed " << so.seed << ": FAIL (" << so.error << ")\n";
      }
    }
    if (!out_dir.empty()) {
      std::cout << "wrote " << out_dir << "/metrics.csv and " << out_dir
                << "/aggregate.json\n";
    }
    return outcome.all_ok ? 0 : 1;
  }

  Instance inst = io::instance_from_json(io::read_file(instance_path));
  RunArtifacts art = run_instance(inst, budget_factor > 0.0 ? budget_factor : 8.0);
  if (!out_dir.empty()) {
    const std::string dir = out_dir + "/seed_" + std::to_string(inst.seed);
    write_run_artifacts(dir, art);
    io::write_file_atomic(out_dir + "/metrics.csv", io::csv_header() + io::csv_row(art.row));
    std::cout << "wrote artifacts under " << dir << "\n";
  }
  print_run_summary(art);
  return art.ok ? 0 : 1;
}

int cmd_audit(const std::string& instance_path, const std::string& run_path,
              const std::string& trace_path, double budget_factor) {
  Instance inst = io::instance_from_json(io::read_file(instance_path));
  const std::string hash = io::instance_hash(inst);
  io::RunBundle bundle = io::run_from_json(io::read_file(run_path));
  Trace trace = io::trace_from_ndjson(io::read_file(trace_path));
  if (bundle.instance_hash != hash || trace.instance_hash != hash) {
    std::cerr << "audit: artifact instance hashes do not match the instance file\n";
    return 2;
  }
  DerivedMetrics derived = derive_metrics(inst);
  AuditReport report =
      audit_run(inst, derived, trace, bundle.run, budget_factor > 0.0 ? budget_factor : 8.0);
  std::cout << io::audit_to_json(report);
  return (report.ok() && bundle.run.ok) ? 0 : 1;
}

int cmd_sched(const std::string& instance_path, const std::string& tree_path,
              std::uint64_t seed, bool seed_given, std::uint64_t index,
              const std::string& out_dir, double budget_factor) {
  Instance inst = io::instance_from_json(io::read_file(instance_path));
  TreeResult tree = io::tree_from_json(io::read_file(tree_path));
  const std::uint64_t use_seed = seed_given ? seed : inst.seed;
  SchedArtifacts sa = schedule_one(inst, tree, use_seed, index,
                                   budget_factor > 0.0 ? budget_factor : 8.0);
  if (!out_dir.empty()) {
    const std::string tag = std::to_string(index);
    io::write_file_atomic(out_dir + "/schedule" + tag + ".json",
                          io::schedule_to_json(sa.result));
    io::write_file_atomic(out_dir + "/sched_run" + tag + ".json",
                          io::sched_run_to_json({io::instance_hash(inst), sa.parent_sends,
                                                 sa.result}));
    io::write_file_atomic(out_dir + "/sched_trace" + tag + ".ndjson",
                          io::trace_to_ndjson(sa.trace));
    io::write_file_atomic(out_dir + "/sched_audit" + tag + ".json",
                          io::audit_to_json(sa.audit));
    std::cout << "wrote schedule artifacts under " << out_dir << "\n";
  }
  const bool ok = sa.result.ok && sa.audit.ok();
  std::cout << "schedule: links=" << sa.parent_sends.size()
            << " slots=" << sa.result.slots_total
            << " completion=" << sa.result.completion_slot << (ok ? " ok" : " FAIL") << "\n";
  for (const auto& [name, ctx] : sa.audit.invariant_failures) {
    std::cout << "  audit failure: " << name << ": " << ctx << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed spanning tree construction under physical interference"};
  app.require_subcommand(1);

  std::string config_path;
  std::string instance_path;
  std::string run_path;
  std::string trace_path;
  std::string tree_path;
  std::string out_dir;
  double budget_factor = 0.0;
  std::vector<std::uint64_t> seeds;
  std::uint64_t sched_seed = 0;
  std::uint64_t sched_index = 0;

  CLI::App* gen = app.add_subcommand("gen", "Generate and validate instance files");
  gen->add_option("--config", config_path, "Experiment config JSON")->required();
  gen->add_option("--out", out_dir, "Output directory")->required();
  gen->add_option("--seed", seeds, "Seeds overriding the config list");

  CLI::App* run = app.add_subcommand("run", "Run construction, audits, and schedules");
  run->add_option("--config", config_path, "Experiment config JSON");
  run->add_option("--instance", instance_path, "Single instance JSON");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--budget-factor", budget_factor, "Slot budget multiplier (default 8)");
  run->add_option("--seed", seeds, "Seeds overriding the config list");

  CLI::App* audit = app.add_subcommand("audit", "Re-audit stored run artifacts");
  audit->add_option("--instance", instance_path, "Instance JSON")->required();
  audit->add_option("--run", run_path, "Run bundle JSON")->required();
  audit->add_option("--trace", trace_path, "Trace NDJSON")->required();
  audit->add_option("--budget-factor", budget_factor, "Slot budget multiplier (default 8)");

  CLI::App* sched = app.add_subcommand("sched", "Schedule a stored tree and audit it");
  sched->add_option("--instance", instance_path, "Instance JSON")->required();
  sched->add_option("--tree", tree_path, "Tree JSON")->required();
  CLI::Option* seed_opt =
      sched->add_option("--seed", sched_seed, "Orientation seed (default: instance seed)");
  sched->add_option("--index", sched_index, "Orientation index, 0 or 1");
  sched->add_option("--out", out_dir, "Output directory");
  sched->add_option("--budget-factor", budget_factor, "Slot budget multiplier (default 8)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(config_path, out_dir, seeds);
    if (run->parsed()) {
      if (config_path.empty() == instance_path.empty()) {
        std::cerr << "run: give exactly one of --config or --instance\n";
        return 2;
      }
      return cmd_run(config_path, instance_path, out_dir, budget_factor, seeds);
    }
    if (audit->parsed()) return cmd_audit(instance_path, run_path, trace_path, budget_factor);
    if (sched->parsed()) {
      return cmd_sched(instance_path, tree_path, sched_seed, seed_opt->count() > 0,
                       sched_index, out_dir, budget_factor);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
