#include <algorithm>
#include <set>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "mstsinr/experiment.hpp"
#include "mstsinr/geometry.hpp"
#include "mstsinr/io.hpp"
#include "mstsinr/nnt.hpp"
#include "mstsinr/verify.hpp"

using namespace mstsinr;
using test::line;
using test::make_test_instance;

TEST_CASE("ball parenting with one member has no phases") {
  Instance inst = make_test_instance(line({0.0, 1.0, 3.0}), 54.0, 1.0);  // range 3
  Engine engine(inst, io::instance_hash(inst));
  RngPool rngs(3, inst.n());
  std::vector<NodeId> members{1};
  std::vector<double> ranks(inst.n(), 0.0);
  ranks[1] = 0.5;
  DerivedMetrics derived = derive_metrics(inst);

  BpResult bp = nnt_sinr_bp(engine, rngs, members, ranks, derived);
  CHECK(bp.ok);
  CHECK(bp.edges.empty());
  CHECK(bp.phases.empty());
  CHECK(bp.roots == std::vector<NodeId>{1});
  CHECK(engine.slots_used() == 0);
}

TEST_CASE("ball parenting joins two close members in the first phase") {
  Instance inst = make_test_instance(line({0.0, 1.0, 2.0}), 16.0);  // range 2
  Engine engine(inst, io::instance_hash(inst));
  RngPool rngs(3, inst.n());
  std::vector<NodeId> members{0, 1};
  std::vector<double> ranks(inst.n(), 0.0);
  ranks[0] = 0.3;
  ranks[1] = 0.8;
  DerivedMetrics derived = derive_metrics(inst);

  BpResult bp = nnt_sinr_bp(engine, rngs, members, ranks, derived);
  CHECK(bp.ok);
  REQUIRE(bp.edges.size() == 1);
  CHECK(bp.edges[0].first == 0);   // lower rank adopts
  CHECK(bp.edges[0].second == 1);  // the higher-ranked neighbor
  CHECK(bp.edge_phase[0] == 1);
  CHECK(bp.roots == std::vector<NodeId>{1});
}

TEST_CASE("every member either gains a parent or survives as a root") {
  Instance inst = make_test_instance(line({0.0, 1.0, 2.2, 3.2, 4.4, 6.0}), 128.0);
  Engine engine(inst, io::instance_hash(inst));
  RngPool rngs(11, inst.n());
  std::vector<NodeId> members{0, 1, 2, 3, 4, 5};
  std::vector<double> ranks(inst.n(), 0.0);
  RngStream rs(21);
  for (NodeId v : members) ranks[v] = rs.u01();
  DerivedMetrics derived = derive_metrics(inst);

  BpResult bp = nnt_sinr_bp(engine, rngs, members, ranks, derived);
  CHECK(bp.ok);
  CHECK(bp.edges.size() + bp.roots.size() == members.size());
  // A child appears in exactly one edge, and its parent has a higher rank.
  std::set<NodeId> children;
  for (const auto& [child, parent] : bp.edges) {
    CHECK(children.insert(child).second);
    CHECK(rank_less(ranks[child], child, ranks[parent], parent));
  }
}

TEST_CASE("rank waves span a line and decrease away from the sink") {
  Instance inst = make_test_instance(line({0.0, 1.0, 2.0, 3.0}), 1024.0);
  Engine engine(inst, io::instance_hash(inst));
  RngPool rngs(5, inst.n());
  std::vector<NodeId> members{0, 1, 2, 3};

  CdResult cd = nnt_sinr_cd(engine, rngs, members, 0, 1.2);
  CHECK(cd.ok);
  CHECK(cd.unreached.empty());
  CHECK(cd.diameter == 3);
  CHECK(cd.edges.size() == 3);
  CHECK(cd.rank[0] == 1.0);
  for (const auto& [child, parent] : cd.edges) {
    CHECK(rank_less(cd.rank[child], child, cd.rank[parent], parent));
  }
  // The wave can only move outward along the line, so each node's parent
  // must sit strictly closer to the sink.
  for (const auto& [child, parent] : cd.edges) {
    CHECK(inst.nodes[parent].x < inst.nodes[child].x);
  }
}

TEST_CASE("a rank wave over a disconnected member graph reports unreached nodes") {
  Instance inst = make_test_instance(line({0.0, 1.0, 10.0}), 1024.0);
  Engine engine(inst, io::instance_hash(inst));
  RngPool rngs(5, inst.n());
  std::vector<NodeId> members{0, 1, 2};

  CdResult cd = nnt_sinr_cd(engine, rngs, members, 0, 1.5);
  CHECK_FALSE(cd.ok);
  CHECK(cd.diameter == -1);
  // The run is rejected before any slot is spent, so every non-sink member
  // is reported, not just the far node.
  CHECK(cd.unreached == std::vector<NodeId>{1, 2});
  CHECK(engine.slots_used() == 0);
}

TEST_CASE("the pipeline rejects configurations whose wave radius exceeds the reach") {
  // conn_c = 1.5 puts the rank wave radius 2 * r_max / conn_c above r_max.
  Instance inst = make_test_instance(line({0.0, 1.0, 2.0, 3.0, 4.0}), 54.0, 1.5);
  Engine engine(inst, io::instance_hash(inst));
  RngPool rngs(42, inst.n());
  DerivedMetrics derived = derive_metrics(inst);

  PipelineResult run = mst_sinr(engine, rngs, derived);
  CHECK_FALSE(run.ok);
  REQUIRE(run.failures.size() == 1);
  CHECK(run.failures[0].find("conn_c") != std::string::npos);
  CHECK(engine.slots_used() == 0);
}

TEST_CASE("the pipeline spans a collinear run end to end") {
  Instance inst = make_test_instance(line({0.0, 1.0, 2.0, 3.0, 4.0}), 128.0);  // r_max = 4
  Engine engine(inst, io::instance_hash(inst));
  RngPool rngs(17, inst.n());
  DerivedMetrics derived = derive_metrics(inst);

  PipelineResult run = mst_sinr(engine, rngs, derived);
  CHECK(run.ok);
  CHECK(run.tree.edges.size() == 4);
  AuditReport audit = audit_run(inst, derived, engine.trace(), run, 8.0);
  CHECK(audit.ok());

  double ratio = approximation_ratio(run.tree, inst);
  CHECK(ratio == audit.cost_ratio);
  CHECK(ratio >= 1.0);
}

TEST_CASE("the pipeline spans a generated layout and passes its audit") {
  ExperimentSpec spec;
  spec.generator = "uniform-square";
  spec.n = 64;
  spec.params.p_max = 2.0 * 9.0 * 9.0 * 9.0;  // range 9
  spec.budget_factor = 8.0;

  RunArtifacts art = run_one(spec, 3);
  CHECK(art.ok);
  CHECK(art.pipeline.ok);
  CHECK(art.pipeline.tree.edges.size() == art.inst.n() - 1);
  CHECK(art.audit.ok());
  CHECK(art.audit.sinr_violations == 0);
  CHECK(art.row.ratio >= 1.0);
  CHECK(art.row.ratio <= 16.0 * art.derived.mu);
  CHECK(art.schedules.size() == 2);
  for (const SchedArtifacts& sa : art.schedules) {
    CHECK(sa.result.ok);
    CHECK(sa.audit.ok());
  }
}

TEST_CASE("tree cost is the ascending-order sum of edge lengths") {
  Instance inst = make_test_instance(line({0.0, 1.0, 3.0}), 128.0);
  std::vector<TreeEdge> edges{{0, 2, "t1"}, {1, 2, "t1"}};
  CHECK(tree_cost(edges, inst) == 5.0);  // lengths 3 and 2
}
