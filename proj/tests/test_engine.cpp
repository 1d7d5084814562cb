#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "mstsinr/engine.hpp"
#include "mstsinr/io.hpp"

using namespace mstsinr;
using test::line;
using test::make_test_instance;

namespace {

std::vector<Decision> all_idle(std::size_t n) { return std::vector<Decision>(n); }

}  // namespace

TEST_CASE("a slot delivers to in-range listeners only") {
  Instance inst = make_test_instance(line({0.0, 1.0, 3.0}), 16.0);
  Engine engine(inst, io::instance_hash(inst));

  auto decisions = all_idle(3);
  decisions[0] = {Action::transmit, 16.0, {PayloadKind::rank, 0, 0.5}};
  decisions[1] = {Action::listen, 0.0, {}};
  decisions[2] = {Action::listen, 0.0, {}};
  const SlotRecord& rec = engine.run_slot(decisions);

  REQUIRE(rec.transmissions.size() == 1);
  CHECK(rec.transmissions[0].sender == 0);
  // Node 1 at distance 1 decodes; node 2 at distance 3 gets 16/27 < beta.
  REQUIRE(rec.deliveries.size() == 1);
  CHECK(rec.deliveries[0].receiver == 1);
  CHECK(rec.deliveries[0].sender == 0);
  CHECK(rec.deliveries[0].payload == decisions[0].payload);
  REQUIRE(rec.total_power_at.size() == 2);
  CHECK(rec.total_power_at[0].first == 1);
  CHECK(rec.total_power_at[1].first == 2);
}

TEST_CASE("idle nodes neither hear nor appear as listeners") {
  Instance inst = make_test_instance(line({0.0, 1.0}), 16.0);
  Engine engine(inst, io::instance_hash(inst));
  auto decisions = all_idle(2);
  decisions[0] = {Action::transmit, 16.0, {PayloadKind::rank, 0, 1.0}};
  const SlotRecord& rec = engine.run_slot(decisions);
  CHECK(rec.deliveries.empty());
  CHECK(rec.total_power_at.empty());
}

TEST_CASE("malformed decisions are rejected before the slot is recorded") {
  Instance inst = make_test_instance(line({0.0, 1.0}), 16.0);
  Engine engine(inst, io::instance_hash(inst));

  auto too_strong = all_idle(2);
  too_strong[0] = {Action::transmit, 17.0, {}};
  CHECK_THROWS_AS(engine.run_slot(too_strong), std::invalid_argument);

  auto zero_power = all_idle(2);
  zero_power[0] = {Action::transmit, 0.0, {}};
  CHECK_THROWS_AS(engine.run_slot(zero_power), std::invalid_argument);

  auto listener_power = all_idle(2);
  listener_power[0] = {Action::listen, 1.0, {}};
  CHECK_THROWS_AS(engine.run_slot(listener_power), std::invalid_argument);

  auto wrong_size = all_idle(1);
  CHECK_THROWS_AS(engine.run_slot(wrong_size), std::invalid_argument);

  CHECK(engine.slots_used() == 0);
}

TEST_CASE("marks label slot positions") {
  Instance inst = make_test_instance(line({0.0, 1.0}), 16.0);
  Engine engine(inst, io::instance_hash(inst));
  engine.mark("start");
  auto decisions = all_idle(2);
  decisions[0] = {Action::transmit, 16.0, {}};
  decisions[1] = {Action::listen, 0.0, {}};
  engine.run_slot(decisions);
  engine.run_slot(decisions);
  engine.mark("after-two");

  const Trace& tr = engine.trace();
  REQUIRE(tr.marks.size() == 2);
  CHECK(tr.marks[0].slot == 0);
  CHECK(tr.marks[0].label == "start");
  CHECK(tr.marks[1].slot == 2);
  CHECK(tr.slots.size() == 2);
  CHECK(tr.slots[0].slot == 0);
  CHECK(tr.slots[1].slot == 1);
}

TEST_CASE("identical runs produce byte-identical traces") {
  Instance inst = make_test_instance(line({0.0, 1.0, 2.5, 4.0}), 32.0);
  auto drive = [&] {
    Engine engine(inst, io::instance_hash(inst));
    auto decisions = all_idle(4);
    decisions[0] = {Action::transmit, 16.0, {PayloadKind::contend, 0, 0.25}};
    decisions[1] = {Action::listen, 0.0, {}};
    decisions[2] = {Action::transmit, 32.0, {PayloadKind::contend, 2, 0.75}};
    decisions[3] = {Action::listen, 0.0, {}};
    engine.mark("phase");
    engine.run_slot(decisions);
    std::swap(decisions[0], decisions[1]);  // different pattern second slot
    engine.run_slot(decisions);
    return io::trace_to_ndjson(engine.trace());
  };
  CHECK(drive() == drive());
}

TEST_CASE("protocol loop stops at done or at the budget") {
  Instance inst = make_test_instance(line({0.0, 1.0}), 16.0);

  struct CountDown : Protocol {
    int remaining;
    explicit CountDown(int k) : remaining(k) {}
    bool done() const override { return remaining == 0; }
    void decide(std::uint32_t, std::vector<Decision>& d) override {
      d[0] = {Action::transmit, 16.0, {}};
      d[1] = {Action::listen, 0.0, {}};
    }
    void observe(const SlotRecord&) override { --remaining; }
  };

  Engine a(inst, io::instance_hash(inst));
  CountDown quick(3);
  ProtocolRun r1 = run_protocol(a, quick, 10);
  CHECK(r1.completed);
  CHECK(r1.slots == 3);
  CHECK(a.slots_used() == 3);

  Engine b(inst, io::instance_hash(inst));
  CountDown slow(5);
  ProtocolRun r2 = run_protocol(b, slow, 2);
  CHECK_FALSE(r2.completed);
  CHECK(r2.slots == 2);
}
