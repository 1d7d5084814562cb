#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "mstsinr/engine.hpp"
#include "mstsinr/experiment.hpp"
#include "mstsinr/io.hpp"
#include "mstsinr/nnt.hpp"
#include "mstsinr/rng.hpp"
#include "mstsinr/verify.hpp"

using namespace mstsinr;
using test::line;
using test::make_test_instance;

namespace {

bool has_failure(const AuditReport& rep, const std::string& name) {
  for (const auto& [n, ctx] : rep.invariant_failures) {
    if (n == name) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("both spanning tree methods agree on simple layouts") {
  MstResult mst = exact_mst(line({0.0, 1.0, 3.0, 6.0}));
  CHECK(mst.cost == 6.0);
  CHECK(mst.cost_frontier == 6.0);
  CHECK(mst.edges.size() == 3);

  MstResult square = exact_mst({Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}});
  CHECK(square.cost == 3.0);
  CHECK(square.cost_frontier == 3.0);
}

TEST_CASE("both spanning tree methods agree on random layouts") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    ExperimentSpec spec;
    spec.n = 200;
    spec.params.p_max = 1.0;  // unused by the oracle
    std::vector<Point> pts = generate_points(spec, seed);
    MstResult mst = exact_mst(pts);
    CHECK(mst.edges.size() == pts.size() - 1);
    CHECK(std::fabs(mst.cost - mst.cost_frontier) <= 1e-9);
  }
}

TEST_CASE("approximation ratio checks spanning and divides costs") {
  Instance inst = make_test_instance(line({0.0, 1.0, 3.0}), 54.0, 1.0);
  TreeResult tree;
  tree.sink = 2;
  tree.edges = {{0, 2, "t1"}, {1, 2, "t1"}};  // lengths 3 and 2, cost 5
  tree.cost = 5.0;
  CHECK(approximation_ratio(tree, inst) == doctest::Approx(5.0 / 3.0));

  TreeResult not_spanning;
  not_spanning.sink = 2;
  not_spanning.edges = {{0, 2, "t1"}};
  CHECK_THROWS_AS(approximation_ratio(not_spanning, inst), std::invalid_argument);

  TreeResult cyclic;
  cyclic.sink = 2;
  cyclic.edges = {{0, 1, "t1"}, {1, 0, "t1"}};
  CHECK_THROWS_AS(approximation_ratio(cyclic, inst), std::invalid_argument);
}

TEST_CASE("a clean pipeline run audits clean") {
  Instance inst = make_test_instance(line({0.0, 1.0, 2.0, 3.0, 4.0}), 128.0);
  Engine engine(inst, io::instance_hash(inst));
  RngPool rngs(8, inst.n());
  DerivedMetrics derived = derive_metrics(inst);
  PipelineResult run = mst_sinr(engine, rngs, derived);
  REQUIRE(run.ok);

  AuditReport rep = audit_run(inst, derived, engine.trace(), run, 8.0);
  CHECK(rep.ok());
  CHECK(rep.sinr_violations == 0);
  CHECK(rep.invariant_failures.empty());
  CHECK(rep.bounds.count("slots_total") == 1);
  CHECK(rep.bounds.count("cost_ratio") == 1);
  CHECK(rep.info.count("mst_cost") == 1);
}

TEST_CASE("the audit flags forged deliveries") {
  Instance inst = make_test_instance(line({0.0, 1.0, 2.0, 3.0, 4.0}), 128.0);
  Engine engine(inst, io::instance_hash(inst));
  RngPool rngs(8, inst.n());
  DerivedMetrics derived = derive_metrics(inst);
  PipelineResult run = mst_sinr(engine, rngs, derived);
  REQUIRE(run.ok);

  Trace tampered = engine.trace();
  // Find a slot with a transmission and a listener that decoded nothing,
  // then forge a delivery to it.
  bool planted = false;
  for (SlotRecord& slot : tampered.slots) {
    if (slot.transmissions.empty() || planted) continue;
    for (const auto& [listener, total] : slot.total_power_at) {
      bool got = false;
      for (const Delivery& d : slot.deliveries) got = got || d.receiver == listener;
      if (!got) {
        Delivery fake;
        fake.sender = slot.transmissions[0].sender;
        fake.receiver = listener;
        fake.payload = slot.transmissions[0].payload;
        slot.deliveries.push_back(fake);
        std::sort(slot.deliveries.begin(), slot.deliveries.end(),
                  [](const Delivery& a, const Delivery& b) { return a.receiver < b.receiver; });
        planted = true;
        break;
      }
    }
  }
  REQUIRE(planted);

  AuditReport rep = audit_run(inst, derived, tampered, run, 8.0);
  CHECK_FALSE(rep.ok());
  CHECK(rep.sinr_violations > 0);
}

TEST_CASE("the audit flags forged listener totals") {
  Instance inst = make_test_instance(line({0.0, 1.0, 2.0, 3.0, 4.0}), 128.0);
  Engine engine(inst, io::instance_hash(inst));
  RngPool rngs(8, inst.n());
  DerivedMetrics derived = derive_metrics(inst);
  PipelineResult run = mst_sinr(engine, rngs, derived);
  REQUIRE(run.ok);

  Trace tampered = engine.trace();
  bool planted = false;
  for (SlotRecord& slot : tampered.slots) {
    if (!slot.total_power_at.empty()) {
      slot.total_power_at[0].second += 1e-12;
      planted = true;
      break;
    }
  }
  REQUIRE(planted);

  AuditReport rep = audit_run(inst, derived, tampered, run, 8.0);
  CHECK(has_failure(rep, "slot-total-power"));
  CHECK_FALSE(rep.ok());
}

TEST_CASE("the audit flags a cycle smuggled into the tree") {
  Instance inst = make_test_instance(line({0.0, 1.0, 2.0, 3.0, 4.0}), 128.0);
  Engine engine(inst, io::instance_hash(inst));
  RngPool rngs(8, inst.n());
  DerivedMetrics derived = derive_metrics(inst);
  PipelineResult run = mst_sinr(engine, rngs, derived);
  REQUIRE(run.ok);

  PipelineResult tampered = run;
  // Rewiring the first two parents onto each other's children produces a
  // cycle (or at the very least breaks rank monotonicity).
  REQUIRE(tampered.tree.edges.size() >= 2);
  TreeEdge& first = tampered.tree.edges[0];
  TreeEdge& second = tampered.tree.edges[1];
  first.parent = second.child;
  second.parent = first.child;

  AuditReport rep = audit_run(inst, derived, engine.trace(), tampered, 8.0);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("the schedule audit flags a dropped slot row") {
  Instance inst = make_test_instance(line({0.0, 1.0, 2.0, 3.0}), 16.0);
  TreeResult tree;
  tree.sink = 3;
  tree.edges = {{0, 1, "t1"}, {1, 2, "t1"}, {2, 3, "t1"}};
  tree.cost = tree_cost(tree.edges, inst);
  Engine engine(inst, io::instance_hash(inst));
  RngPool rngs(29, inst.n());
  std::vector<std::uint8_t> sends(3, 0);
  ScheduleResult res = schedule_tree(engine, rngs, tree, sends);
  REQUIRE(res.ok);
  DerivedMetrics derived = derive_metrics(inst);

  ScheduleResult tampered = res;
  tampered.slots.pop_back();
  AuditReport rep = audit_schedule(inst, derived, tree, sends, tampered, engine.trace(), 8.0);
  CHECK(has_failure(rep, "sched-slot-alignment"));
  CHECK_FALSE(rep.ok());
}
