#include "mstsinr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "mstsinr/engine.hpp"
#include "mstsinr/geometry.hpp"
#include "mstsinr/rng.hpp"

namespace mstsinr {
namespace {

using nlohmann::json;

// Stream salts keep the generator, the orientation draws, and the schedule
// coin pools independent of the protocol streams that share the same seed.
constexpr std::uint64_t kGenSalt = 0x67656e2d73616c74ull;
constexpr std::uint64_t kOrientSalt = 0x6f7269656e742d73ull;
constexpr std::uint64_t kSchedSalt = 0x736368656432342dull;

constexpr double kTau = 6.28318530717958647692;

double side_of(const ExperimentSpec& spec) {
  return spec.area_side > 0.0 ? spec.area_side : 2.0 * std::sqrt(static_cast<double>(spec.n));
}

bool separated(const std::vector<Point>& pts, const Point& cand) {
  for (const Point& p : pts) {
    if (dist2(p, cand) < 1.0) return false;
  }
  return true;
}

std::vector<Point> gen_uniform_square(std::size_t n, double side, RngStream& g) {
  std::vector<Point> pts;
  pts.reserve(n);
  std::size_t attempts = 0;
  const std::size_t cap = 1000 * std::max<std::size_t>(n, 1);
  while (pts.size() < n && attempts < cap) {
    ++attempts;
    Point cand{g.u01() * side, g.u01() * side};
    if (separated(pts, cand)) pts.push_back(cand);
  }
  if (pts.size() < n) {
    throw std::runtime_error("generate_points: could not place " + std::to_string(n) +
                             " separated nodes in a square of side " + std::to_string(side));
  }
  return pts;
}

std::vector<Point> gen_grid(std::size_t n) {
  const auto m = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::vector<Point> pts;
  pts.reserve(m * m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      pts.push_back(Point{static_cast<double>(c), static_cast<double>(r)});
    }
  }
  return pts;
}

std::vector<Point> gen_clusters(std::size_t n, double side, int k, RngStream& g) {
  if (k < 1) throw std::invalid_argument("generate_points: clusters must be positive");
  std::vector<Point> centers;
  centers.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) centers.push_back(Point{g.u01() * side, g.u01() * side});
  const double sigma = side / (4.0 * std::sqrt(static_cast<double>(k)));

  std::vector<Point> pts;
  pts.reserve(n);
  std::size_t attempts = 0;
  const std::size_t cap = 1000 * std::max<std::size_t>(n, 1);
  while (pts.size() < n && attempts < cap) {
    ++attempts;
    const Point& c = centers[pts.size() % centers.size()];
    // Box-Muller; 1 - u01() keeps the log argument in (0, 1].
    const double u1 = 1.0 - g.u01();
    const double u2 = g.u01();
    const double mag = sigma * std::sqrt(-2.0 * std::log(u1));
    Point cand{c.x + mag * std::cos(kTau * u2), c.y + mag * std::sin(kTau * u2)};
    cand.x = std::clamp(cand.x, 0.0, side);
    cand.y = std::clamp(cand.y, 0.0, side);
    if (separated(pts, cand)) pts.push_back(cand);
  }
  if (pts.size() < n) {
    throw std::runtime_error("generate_points: could not place " + std::to_string(n) +
                             " separated nodes across " + std::to_string(k) + " clusters");
  }
  return pts;
}

// Least squares through the origin: slope = sum(x*y) / sum(x*x).
double fit_slope(const std::vector<std::pair<double, double>>& xy) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& [x, y] : xy) {
    num += x * y;
    den += x * x;
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace

std::string spec_to_json(const ExperimentSpec& spec) {
  json j;
  j["generator"] = spec.generator;
  j["n"] = spec.n;
  j["area_side"] = spec.area_side;
  j["clusters"] = spec.clusters;
  j["alpha"] = spec.params.alpha;
  j["beta"] = spec.params.beta;
  j["noise"] = spec.params.noise;
  j["p_max"] = spec.params.p_max;
  j["conn_c"] = spec.params.conn_c;
  j["gamma"] = spec.broadcast.gamma;
  j["gamma_prime"] = spec.broadcast.gamma_prime;
  j["rounds_factor"] = spec.broadcast.rounds_factor;
  if (spec.broadcast.c_prime > 0.0) j["c_prime"] = spec.broadcast.c_prime;
  j["seeds"] = spec.seeds;
  j["budget_factor"] = spec.budget_factor;
  return j.dump(2) + "\n";
}

ExperimentSpec spec_from_json(const std::string& text) {
  const json j = json::parse(text);
  ExperimentSpec spec;
  spec.generator = j.value("generator", spec.generator);
  spec.n = j.at("n").get<std::size_t>();
  spec.area_side = j.value("area_side", 0.0);
  spec.clusters = j.value("clusters", 4);
  spec.params.alpha = j.value("alpha", spec.params.alpha);
  spec.params.beta = j.value("beta", spec.params.beta);
  spec.params.noise = j.value("noise", spec.params.noise);
  spec.params.p_max = j.at("p_max").get<double>();
  spec.params.conn_c = j.value("conn_c", spec.params.conn_c);
  spec.broadcast.gamma = j.value("gamma", spec.broadcast.gamma);
  spec.broadcast.gamma_prime = j.value("gamma_prime", spec.broadcast.gamma_prime);
  spec.broadcast.rounds_factor = j.value("rounds_factor", spec.broadcast.rounds_factor);
  spec.broadcast.c_prime = j.value("c_prime", 0.0);
  if (j.contains("seeds")) spec.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  spec.budget_factor = j.value("budget_factor", 8.0);
  return spec;
}

std::vector<Point> generate_points(const ExperimentSpec& spec, std::uint64_t seed) {
  RngStream g(splitmix64(seed ^ kGenSalt));
  const double side = side_of(spec);
  if (spec.generator == "uniform-square") return gen_uniform_square(spec.n, side, g);
  if (spec.generator == "grid") return gen_grid(spec.n);
  if (spec.generator == "clusters") return gen_clusters(spec.n, side, spec.clusters, g);
  throw std::invalid_argument("generate_points: unknown generator '" + spec.generator + "'");
}

Instance assemble_instance(const ExperimentSpec& spec, std::uint64_t seed,
                           std::vector<Point> pts) {
  Instance inst;
  inst.nodes = std::move(pts);
  inst.params = spec.params;
  inst.broadcast = spec.broadcast;
  inst.seed = seed;
  return inst;
}

Instance make_instance(const ExperimentSpec& spec, std::uint64_t seed) {
  Instance inst = assemble_instance(spec, seed, generate_points(spec, seed));
  inst.nodes = normalize(std::move(inst.nodes));
  validate_instance(inst);
  return inst;
}

SchedArtifacts schedule_one(const Instance& inst, const TreeResult& tree,
                            std::uint64_t seed, std::uint64_t index,
                            double budget_factor) {
  SchedArtifacts sa;
  RngStream orient(splitmix64(seed ^ (kOrientSalt + index)));
  sa.parent_sends.resize(tree.edges.size());
  for (auto& b : sa.parent_sends) b = orient.coin(0.5) ? 1 : 0;

  const DerivedMetrics derived = derive_metrics(inst);
  Engine engine(inst, io::instance_hash(inst));
  RngPool pool(seed ^ (kSchedSalt + index), inst.n());
  sa.result = schedule_tree(engine, pool, tree, sa.parent_sends);
  sa.trace = engine.trace();
  sa.audit = audit_schedule(inst, derived, tree, sa.parent_sends, sa.result, sa.trace,
                            budget_factor);
  return sa;
}

RunArtifacts run_instance(const Instance& inst, double budget_factor) {
  RunArtifacts art;
  art.inst = inst;
  art.derived = derive_metrics(art.inst);
  art.hash = io::instance_hash(art.inst);
  const std::uint64_t seed = art.inst.seed;

  Engine engine(art.inst, art.hash);
  RngPool pool(seed, art.inst.n());
  art.pipeline = mst_sinr(engine, pool, art.derived);
  art.trace = engine.trace();
  art.audit = audit_run(art.inst, art.derived, art.trace, art.pipeline, budget_factor);

  bool sched_ok = true;
  if (art.pipeline.ok) {
    for (std::uint64_t k = 0; k < 2; ++k) {
      SchedArtifacts sa = schedule_one(art.inst, art.pipeline.tree, seed, k, budget_factor);
      sched_ok = sched_ok && sa.result.ok && sa.audit.ok();
      art.schedules.push_back(std::move(sa));
    }
  } else {
    sched_ok = false;
  }

  art.row.seed = seed;
  art.row.n = art.inst.n();
  art.row.d = art.derived.diameter;
  art.row.mu = art.derived.mu;
  art.row.cost = art.pipeline.tree.cost;
  art.row.mst_cost = art.audit.info.count("mst_cost") ? art.audit.info.at("mst_cost") : 0.0;
  art.row.ratio = art.audit.cost_ratio;
  art.row.slots_total = art.pipeline.stage_slots.total_charged();
  art.row.slots_domset = art.pipeline.stage_slots.domset_charged;
  art.row.slots_cd = art.pipeline.stage_slots.cd;
  art.row.slots_bcast = art.pipeline.stage_slots.rank_bcast;
  art.row.slots_bp = art.pipeline.stage_slots.bp;
  art.row.sched_slots = art.schedules.empty() ? 0 : art.schedules[0].result.slots_total;

  art.ok = art.pipeline.ok && art.audit.ok() && sched_ok;
  return art;
}

RunArtifacts run_one(const ExperimentSpec& spec, std::uint64_t seed) {
  return run_instance(make_instance(spec, seed), spec.budget_factor);
}

void write_run_artifacts(const std::string& dir, const RunArtifacts& art) {
  io::write_file_atomic(dir + "/instance.json", io::instance_to_json(art.inst));
  io::write_file_atomic(dir + "/trace.ndjson", io::trace_to_ndjson(art.trace));
  io::write_file_atomic(dir + "/run.json",
                        io::run_to_json({art.hash, art.inst.seed, art.pipeline}));
  io::write_file_atomic(dir + "/tree.json", io::tree_to_json(art.pipeline.tree));
  io::write_file_atomic(dir + "/audit.json", io::audit_to_json(art.audit));
  for (std::size_t k = 0; k < art.schedules.size(); ++k) {
    const SchedArtifacts& sa = art.schedules[k];
    const std::string tag = std::to_string(k);
    io::write_file_atomic(dir + "/schedule" + tag + ".json",
                          io::schedule_to_json(sa.result));
    io::write_file_atomic(dir + "/sched_run" + tag + ".json",
                          io::sched_run_to_json({art.hash, sa.parent_sends, sa.result}));
    io::write_file_atomic(dir + "/sched_trace" + tag + ".ndjson",
                          io::trace_to_ndjson(sa.trace));
    io::write_file_atomic(dir + "/sched_audit" + tag + ".json", io::audit_to_json(sa.audit));
  }
}

namespace {

struct SeriesAccum {
  std::size_t count = 0;
  double ratio_sum = 0.0;
  double ratio_max = 0.0;
  double slots_sum = 0.0;
  double slots_max = 0.0;
  double sched_sum = 0.0;
};

}  // namespace

ExperimentOutcome run_experiment(const ExperimentSpec& spec, const std::string& out_dir) {
  ExperimentOutcome out;
  out.all_ok = !spec.seeds.empty();

  std::string csv = io::csv_header();
  std::vector<std::pair<double, double>> slots_xy;   // (D + mu) * log2 n vs slots
  std::vector<std::pair<double, double>> sched_xy;   // mu * log2 n vs completion
  std::map<std::size_t, SeriesAccum> series;
  json failures = json::array();

  for (std::uint64_t seed : spec.seeds) {
    SeedOutcome so;
    so.seed = seed;
    try {
      RunArtifacts art = run_one(spec, seed);
      so.ok = art.ok;
      so.has_row = true;
      so.row = art.row;
      if (out_dir.empty() == false) {
        write_run_artifacts(out_dir + "/seed_" + std::to_string(seed), art);
      }
      csv += io::csv_row(art.row);

      const double log_n = std::log2(static_cast<double>(art.row.n));
      slots_xy.emplace_back((art.row.d + art.row.mu) * log_n,
                            static_cast<double>(art.row.slots_total));
      for (const SchedArtifacts& sa : art.schedules) {
        sched_xy.emplace_back(art.row.mu * log_n,
                              static_cast<double>(sa.result.completion_slot));
      }
      SeriesAccum& acc = series[art.row.n];
      acc.count += 1;
      acc.ratio_sum += art.row.ratio;
      acc.ratio_max = std::max(acc.ratio_max, art.row.ratio);
      acc.slots_sum += static_cast<double>(art.row.slots_total);
      acc.slots_max = std::max(acc.slots_max, static_cast<double>(art.row.slots_total));
      acc.sched_sum += static_cast<double>(art.row.sched_slots);
      if (!art.ok) {
        json f;
        f["seed"] = seed;
        f["error"] = "audit or protocol failure";
        json details = json::array();
        for (const std::string& s : art.pipeline.failures) details.push_back(s);
        for (const auto& [name, ctx] : art.audit.invariant_failures) {
          details.push_back(name + ": " + ctx);
        }
        for (const SchedArtifacts& sa : art.schedules) {
          for (const auto& [name, ctx] : sa.audit.invariant_failures) {
            details.push_back(name + ": " + ctx);
          }
        }
        f["details"] = details;
        failures.push_back(f);
      }
    } catch (const std::exception& e) {
      so.ok = false;
      so.error = e.what();
      json f;
      f["seed"] = seed;
      f["error"] = so.error;
      failures.push_back(f);
    }
    out.all_ok = out.all_ok && so.ok;
    out.seeds.push_back(std::move(so));
  }

  double ratio_sum = 0.0;
  double ratio_max = 0.0;
  std::size_t rows = 0;
  for (const SeedOutcome& so : out.seeds) {
    if (!so.has_row) continue;
    ++rows;
    ratio_sum += so.row.ratio;
    ratio_max = std::max(ratio_max, so.row.ratio);
  }

  json agg;
  agg["seeds"] = spec.seeds.size();
  agg["rows"] = rows;
  agg["all_ok"] = out.all_ok;
  agg["mean_ratio"] = rows ? ratio_sum / static_cast<double>(rows) : 0.0;
  agg["max_ratio"] = ratio_max;
  agg["fit_slots_per_dmu_log"] = fit_slope(slots_xy);
  agg["fit_sched_per_mu_log"] = fit_slope(sched_xy);
  agg["failures"] = failures;
  json series_json = json::array();
  for (const auto& [n, acc] : series) {
    json row;
    row["n"] = n;
    row["count"] = acc.count;
    row["mean_ratio"] = acc.count ? acc.ratio_sum / static_cast<double>(acc.count) : 0.0;
    row["max_ratio"] = acc.ratio_max;
    row["mean_slots"] = acc.count ? acc.slots_sum / static_cast<double>(acc.count) : 0.0;
    row["max_slots"] = acc.slots_max;
    row["mean_sched_slots"] = acc.count ? acc.sched_sum / static_cast<double>(acc.count) : 0.0;
    series_json.push_back(row);
  }
  agg["series"] = series_json;

  out.csv = std::move(csv);
  out.aggregate_json = agg.dump(2) + "\n";
  if (!out_dir.empty()) {
    io::write_file_atomic(out_dir + "/metrics.csv", out.csv);
    io::write_file_atomic(out_dir + "/aggregate.json", out.aggregate_json);
  }
  return out;
}

}  // namespace mstsinr
