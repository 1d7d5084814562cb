#include "mstsinr/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mstsinr/geometry.hpp"

namespace mstsinr::io {

namespace {

using nlohmann::json;

// Shortest round-trip rendering shared by JSON and CSV output, so the same
// value always prints the same bytes.
std::string num(double x) { return json(x).dump(); }

json report_to_json(const BroadcastReport& br) {
  json accepted = json::array();
  for (const AcceptRecord& a : br.accepted) {
    accepted.push_back(json::array({a.slot, a.sender, a.receiver}));
  }
  json unmet = json::array();
  for (const auto& [u, v] : br.unmet_pairs) unmet.push_back(json::array({u, v}));
  return json{{"label", br.label},
              {"r_b", br.r_b},
              {"power", br.power},
              {"accept_radius", br.accept_radius},
              {"density_n", br.density_n},
              {"budget", br.budget},
              {"slots_used", br.slots_used},
              {"goal_met", br.goal_met},
              {"high_interference_accepts", br.high_interference_accepts},
              {"accepted", accepted},
              {"unmet_pairs", unmet}};
}

BroadcastReport report_from_json(const json& j) {
  BroadcastReport br;
  br.label = j.at("label").get<std::string>();
  br.r_b = j.at("r_b").get<double>();
  br.power = j.at("power").get<double>();
  br.accept_radius = j.at("accept_radius").get<double>();
  br.density_n = j.at("density_n").get<std::size_t>();
  br.budget = j.at("budget").get<std::uint32_t>();
  br.slots_used = j.at("slots_used").get<std::uint32_t>();
  br.goal_met = j.at("goal_met").get<bool>();
  br.high_interference_accepts = j.at("high_interference_accepts").get<std::uint32_t>();
  for (const json& a : j.at("accepted")) {
    br.accepted.push_back({a.at(0).get<std::uint32_t>(), a.at(1).get<NodeId>(),
                           a.at(2).get<NodeId>()});
  }
  for (const json& p : j.at("unmet_pairs")) {
    br.unmet_pairs.emplace_back(p.at(0).get<NodeId>(), p.at(1).get<NodeId>());
  }
  return br;
}

}  // namespace

std::string instance_hash(const Instance& inst) {
  std::string canon;
  canon += "n=" + std::to_string(inst.n());
  canon += ";alpha=" + num(inst.params.alpha);
  canon += ";beta=" + num(inst.params.beta);
  canon += ";noise=" + num(inst.params.noise);
  canon += ";p_max=" + num(inst.params.p_max);
  canon += ";conn_c=" + num(inst.params.conn_c);
  canon += ";gamma=" + num(inst.broadcast.gamma);
  canon += ";gamma_prime=" + num(inst.broadcast.gamma_prime);
  canon += ";rounds_factor=" + num(inst.broadcast.rounds_factor);
  canon += ";c_prime=" + num(inst.broadcast.c_prime);
  canon += ";seed=" + std::to_string(inst.seed);
  for (const Point& p : inst.nodes) {
    canon += ";" + num(p.x) + "," + num(p.y);
  }
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string instance_to_json(const Instance& inst) {
  json nodes = json::array();
  for (const Point& p : inst.nodes) nodes.push_back(json::array({p.x, p.y}));
  json j{{"nodes", nodes},
         {"alpha", inst.params.alpha},
         {"beta", inst.params.beta},
         {"noise", inst.params.noise},
         {"p_max", inst.params.p_max},
         {"conn_c", inst.params.conn_c},
         {"gamma", inst.broadcast.gamma},
         {"gamma_prime", inst.broadcast.gamma_prime},
         {"rounds_factor", inst.broadcast.rounds_factor},
         {"seed", inst.seed}};
  if (inst.broadcast.c_prime > 0.0) j["c_prime"] = inst.broadcast.c_prime;
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  const json j = json::parse(text);
  Instance inst;
  for (const json& p : j.at("nodes")) {
    inst.nodes.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }
  inst.params.alpha = j.at("alpha").get<double>();
  inst.params.beta = j.at("beta").get<double>();
  inst.params.noise = j.at("noise").get<double>();
  inst.params.p_max = j.at("p_max").get<double>();
  inst.params.conn_c = j.at("conn_c").get<double>();
  inst.broadcast.gamma = j.at("gamma").get<double>();
  inst.broadcast.gamma_prime = j.at("gamma_prime").get<double>();
  inst.broadcast.rounds_factor = j.at("rounds_factor").get<double>();
  if (j.contains("c_prime")) inst.broadcast.c_prime = j.at("c_prime").get<double>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  inst.nodes = normalize(std::move(inst.nodes));
  validate_instance(inst);
  return inst;
}

std::string trace_to_ndjson(const Trace& trace) {
  std::string out;
  json header{{"instance_hash", trace.instance_hash}, {"seed", trace.seed}, {"n", trace.n}};
  json marks = json::array();
  for (const PhaseMark& m : trace.marks) marks.push_back(json::array({m.slot, m.label}));
  header["marks"] = marks;
  out += header.dump();
  out += "\n";
  for (const SlotRecord& rec : trace.slots) {
    json t = json::array();
    for (const TxRecord& tx : rec.transmissions) {
      t.push_back(json::array(
          {tx.sender, tx.power, static_cast<int>(tx.payload.kind), tx.payload.id,
           tx.payload.value}));
    }
    json d = json::array();
    for (const Delivery& dv : rec.deliveries) {
      d.push_back(json::array(
          {dv.sender, dv.receiver, static_cast<int>(dv.payload.kind), dv.payload.id,
           dv.payload.value}));
    }
    json p = json::array();
    for (const auto& [v, total] : rec.total_power_at) p.push_back(json::array({v, total}));
    out += json{{"s", rec.slot}, {"t", t}, {"d", d}, {"p", p}}.dump();
    out += "\n";
  }
  return out;
}

Trace trace_from_ndjson(const std::string& text) {
  Trace trace;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    if (!have_header) {
      trace.instance_hash = j.at("instance_hash").get<std::string>();
      trace.seed = j.at("seed").get<std::uint64_t>();
      trace.n = j.at("n").get<std::uint32_t>();
      for (const json& m : j.at("marks")) {
        trace.marks.push_back({m.at(0).get<std::uint32_t>(), m.at(1).get<std::string>()});
      }
      have_header = true;
      continue;
    }
    SlotRecord rec;
    rec.slot = j.at("s").get<std::uint32_t>();
    for (const json& t : j.at("t")) {
      TxRecord tx;
      tx.sender = t.at(0).get<NodeId>();
      tx.power = t.at(1).get<double>();
      tx.payload.kind = static_cast<PayloadKind>(t.at(2).get<int>());
      tx.payload.id = t.at(3).get<NodeId>();
      tx.payload.value = t.at(4).get<double>();
      rec.transmissions.push_back(tx);
    }
    for (const json& d : j.at("d")) {
      Delivery dv;
      dv.sender = d.at(0).get<NodeId>();
      dv.receiver = d.at(1).get<NodeId>();
      dv.payload.kind = static_cast<PayloadKind>(d.at(2).get<int>());
      dv.payload.id = d.at(3).get<NodeId>();
      dv.payload.value = d.at(4).get<double>();
      rec.deliveries.push_back(dv);
    }
    for (const json& p : j.at("p")) {
      rec.total_power_at.emplace_back(p.at(0).get<NodeId>(), p.at(1).get<double>());
    }
    trace.slots.push_back(std::move(rec));
  }
  if (!have_header) throw std::runtime_error("trace file has no header line");
  return trace;
}

namespace {

json tree_to_json_obj(const TreeResult& tree) {
  json edges = json::array();
  for (const TreeEdge& e : tree.edges) {
    edges.push_back(json::array({e.child, e.parent, e.origin}));
  }
  return json{{"edges", edges},
              {"sink", tree.sink},
              {"cost", tree.cost},
              {"slots_used", tree.slots_used}};
}

TreeResult tree_from_json_obj(const json& j) {
  TreeResult tree;
  for (const json& e : j.at("edges")) {
    tree.edges.push_back(
        {e.at(0).get<NodeId>(), e.at(1).get<NodeId>(), e.at(2).get<std::string>()});
  }
  tree.sink = j.at("sink").get<NodeId>();
  tree.cost = j.at("cost").get<double>();
  tree.slots_used = j.at("slots_used").get<std::uint32_t>();
  return tree;
}

}  // namespace

std::string run_to_json(const RunBundle& bundle) {
  const PipelineResult& run = bundle.run;
  json dom_reports = json::array();
  for (const BroadcastReport& br : run.dom.reports) dom_reports.push_back(report_to_json(br));
  json dom{{"dom", run.dom.dom},
           {"rounds", run.dom.rounds},
           {"emulation_slots", run.dom.emulation_slots},
           {"charged_slots", run.dom.charged_slots},
           {"ok", run.dom.ok},
           {"reports", dom_reports}};

  json cd_edges = json::array();
  for (const auto& [c, p] : run.cd.edges) cd_edges.push_back(json::array({c, p}));
  json cd_reports = json::array();
  for (const BroadcastReport& br : run.cd.reports) cd_reports.push_back(report_to_json(br));
  json cd{{"edges", cd_edges},
          {"rank", run.cd.rank},
          {"louder", run.cd.louder},
          {"unreached", run.cd.unreached},
          {"diameter", run.cd.diameter},
          {"waves_run", run.cd.waves_run},
          {"reports", cd_reports},
          {"ok", run.cd.ok}};

  json bp_edges = json::array();
  for (std::size_t i = 0; i < run.bp.edges.size(); ++i) {
    bp_edges.push_back(json::array(
        {run.bp.edges[i].first, run.bp.edges[i].second, run.bp.edge_phase[i]}));
  }
  json bp_phases = json::array();
  for (const BpPhase& ph : run.bp.phases) {
    bp_phases.push_back(json{{"index", ph.index},
                             {"d", ph.d},
                             {"power", ph.power},
                             {"members", ph.members},
                             {"report", report_to_json(ph.report)}});
  }
  json bp{{"edges", bp_edges}, {"roots", run.bp.roots}, {"phases", bp_phases}, {"ok", run.bp.ok}};

  json stage{{"domset_actual", run.stage_slots.domset_actual},
             {"domset_charged", run.stage_slots.domset_charged},
             {"cd", run.stage_slots.cd},
             {"rank_bcast", run.stage_slots.rank_bcast},
             {"bp", run.stage_slots.bp}};

  json j{{"instance_hash", bundle.instance_hash},
         {"seed", bundle.seed},
         {"ok", run.ok},
         {"failures", run.failures},
         {"dom", dom},
         {"cd", cd},
         {"has_rank_stage", run.has_rank_stage},
         {"rank_bcast", report_to_json(run.rank_bcast)},
         {"bp", bp},
         {"stage_slots", stage},
         {"rank", run.rank},
         {"dom_link", run.dom_link},
         {"tree", tree_to_json_obj(run.tree)}};
  return j.dump() + "\n";
}

RunBundle run_from_json(const std::string& text) {
  const json j = json::parse(text);
  RunBundle bundle;
  bundle.instance_hash = j.at("instance_hash").get<std::string>();
  bundle.seed = j.at("seed").get<std::uint64_t>();
  PipelineResult& run = bundle.run;
  run.ok = j.at("ok").get<bool>();
  run.failures = j.at("failures").get<std::vector<std::string>>();

  const json& dom = j.at("dom");
  run.dom.dom = dom.at("dom").get<std::vector<NodeId>>();
  run.dom.rounds = dom.at("rounds").get<std::uint32_t>();
  run.dom.emulation_slots = dom.at("emulation_slots").get<std::uint32_t>();
  run.dom.charged_slots = dom.at("charged_slots").get<std::uint32_t>();
  run.dom.ok = dom.at("ok").get<bool>();
  for (const json& r : dom.at("reports")) run.dom.reports.push_back(report_from_json(r));

  const json& cd = j.at("cd");
  for (const json& e : cd.at("edges")) {
    run.cd.edges.emplace_back(e.at(0).get<NodeId>(), e.at(1).get<NodeId>());
  }
  run.cd.rank = cd.at("rank").get<std::vector<double>>();
  run.cd.louder = cd.at("louder").get<std::vector<std::vector<NodeId>>>();
  run.cd.unreached = cd.at("unreached").get<std::vector<NodeId>>();
  run.cd.diameter = cd.at("diameter").get<int>();
  run.cd.waves_run = cd.at("waves_run").get<std::uint32_t>();
  for (const json& r : cd.at("reports")) run.cd.reports.push_back(report_from_json(r));
  run.cd.ok = cd.at("ok").get<bool>();

  run.has_rank_stage = j.at("has_rank_stage").get<bool>();
  run.rank_bcast = report_from_json(j.at("rank_bcast"));

  const json& bp = j.at("bp");
  for (const json& e : bp.at("edges")) {
    run.bp.edges.emplace_back(e.at(0).get<NodeId>(), e.at(1).get<NodeId>());
    run.bp.edge_phase.push_back(e.at(2).get<int>());
  }
  run.bp.roots = bp.at("roots").get<std::vector<NodeId>>();
  for (const json& p : bp.at("phases")) {
    BpPhase ph;
    ph.index = p.at("index").get<int>();
    ph.d = p.at("d").get<double>();
    ph.power = p.at("power").get<double>();
    ph.members = p.at("members").get<std::vector<NodeId>>();
    ph.report = report_from_json(p.at("report"));
    run.bp.phases.push_back(std::move(ph));
  }
  run.bp.ok = bp.at("ok").get<bool>();

  const json& stage = j.at("stage_slots");
  run.stage_slots.domset_actual = stage.at("domset_actual").get<std::uint32_t>();
  run.stage_slots.domset_charged = stage.at("domset_charged").get<std::uint32_t>();
  run.stage_slots.cd = stage.at("cd").get<std::uint32_t>();
  run.stage_slots.rank_bcast = stage.at("rank_bcast").get<std::uint32_t>();
  run.stage_slots.bp = stage.at("bp").get<std::uint32_t>();

  run.rank = j.at("rank").get<std::vector<double>>();
  run.dom_link = j.at("dom_link").get<std::vector<NodeId>>();
  run.tree = tree_from_json_obj(j.at("tree"));
  return bundle;
}

std::string tree_to_json(const TreeResult& tree) { return tree_to_json_obj(tree).dump(2) + "\n"; }

TreeResult tree_from_json(const std::string& text) {
  return tree_from_json_obj(json::parse(text));
}

std::string schedule_to_json(const ScheduleResult& sched) {
  json j = json::array();
  for (const auto& slot : sched.slots) {
    json row = json::array();
    for (const SchedLink& l : slot) {
      row.push_back(json::array({l.sender, l.receiver, l.power}));
    }
    j.push_back(row);
  }
  return j.dump() + "\n";
}

std::string sched_run_to_json(const SchedBundle& bundle) {
  const ScheduleResult& s = bundle.result;
  json classes = json::array();
  for (const ClassRun& c : s.classes) {
    classes.push_back(json{{"index", c.index},
                           {"nominal_length", c.nominal_length},
                           {"power", c.power},
                           {"links", c.links},
                           {"k", c.k},
                           {"budget", c.budget},
                           {"slots_used", c.slots_used}});
  }
  json slots = json::array();
  for (const auto& slot : s.slots) {
    json row = json::array();
    for (const SchedLink& l : slot) {
      row.push_back(json::array({l.sender, l.receiver, l.power, l.edge}));
    }
    slots.push_back(row);
  }
  json j{{"instance_hash", bundle.instance_hash},
         {"parent_sends", bundle.parent_sends},
         {"classes", classes},
         {"slots", slots},
         {"slots_total", s.slots_total},
         {"completion_slot", s.completion_slot},
         {"first_success", s.first_success},
         {"unscheduled", s.unscheduled},
         {"ok", s.ok}};
  return j.dump() + "\n";
}

SchedBundle sched_run_from_json(const std::string& text) {
  const json j = json::parse(text);
  SchedBundle bundle;
  bundle.instance_hash = j.at("instance_hash").get<std::string>();
  bundle.parent_sends = j.at("parent_sends").get<std::vector<std::uint8_t>>();
  ScheduleResult& s = bundle.result;
  for (const json& c : j.at("classes")) {
    ClassRun run;
    run.index = c.at("index").get<int>();
    run.nominal_length = c.at("nominal_length").get<double>();
    run.power = c.at("power").get<double>();
    run.links = c.at("links").get<std::size_t>();
    run.k = c.at("k").get<std::size_t>();
    run.budget = c.at("budget").get<std::uint32_t>();
    run.slots_used = c.at("slots_used").get<std::uint32_t>();
    s.classes.push_back(run);
  }
  for (const json& slot : j.at("slots")) {
    std::vector<SchedLink> row;
    for (const json& l : slot) {
      row.push_back({l.at(0).get<NodeId>(), l.at(1).get<NodeId>(), l.at(2).get<double>(),
                     l.at(3).get<std::size_t>()});
    }
    s.slots.push_back(std::move(row));
  }
  s.slots_total = j.at("slots_total").get<std::uint32_t>();
  s.completion_slot = j.at("completion_slot").get<std::uint32_t>();
  s.first_success = j.at("first_success").get<std::vector<std::uint32_t>>();
  s.unscheduled = j.at("unscheduled").get<std::vector<std::size_t>>();
  s.ok = j.at("ok").get<bool>();
  return bundle;
}

std::string audit_to_json(const AuditReport& report) {
  json bounds = json::object();
  for (const auto& [name, mb] : report.bounds) {
    bounds[name] = json::array({mb.first, mb.second});
  }
  json info = json::object();
  for (const auto& [name, v] : report.info) info[name] = v;
  json failures = json::array();
  for (const auto& [name, ctx] : report.invariant_failures) {
    failures.push_back(json::array({name, ctx}));
  }
  json j{{"sinr_violations", report.sinr_violations},
         {"invariant_failures", failures},
         {"cost_ratio", report.cost_ratio},
         {"slots_used", report.slots_used},
         {"bounds", bounds},
         {"info", info},
         {"ok", report.ok()}};
  return j.dump(2) + "\n";
}

std::string csv_header() {
  return "seed,n,D,mu,cost,mst_cost,ratio,slots_total,slots_domset,slots_cd,slots_bcast,"
         "slots_bp,sched_slots\n";
}

std::string csv_row(const MetricsRow& row) {
  std::string out;
  out += std::to_string(row.seed);
  out += "," + std::to_string(row.n);
  out += "," + std::to_string(row.d);
  out += "," + num(row.mu);
  out += "," + num(row.cost);
  out += "," + num(row.mst_cost);
  out += "," + num(row.ratio);
  out += "," + std::to_string(row.slots_total);
  out += "," + std::to_string(row.slots_domset);
  out += "," + std::to_string(row.slots_cd);
  out += "," + std::to_string(row.slots_bcast);
  out += "," + std::to_string(row.slots_bp);
  out += "," + std::to_string(row.sched_slots);
  out += "\n";
  return out;
}

}  // namespace mstsinr::io
