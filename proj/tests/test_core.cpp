#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pcn/core/simulate.hpp"
#include "pcn/core/validate.hpp"
#include "support.hpp"

using namespace pcn;
using testsupport::tiny_net;
using testsupport::tiny_txns;

TEST_CASE("an unmodified channel services the first payment and drops the second") {
  const core::Trace tr = core::simulate(tiny_net(), tiny_txns(), {});
  CHECK(tr.executed == std::vector<int>{1});
  CHECK(tr.skipped == std::vector<int>{2});
  CHECK(tr.capacity_at("e1", 0) == doctest::Approx(5.0));
  CHECK(tr.capacity_at("e1", 1) == doctest::Approx(2.0));
  CHECK(tr.capacity_at("e1", 2) == doctest::Approx(2.0));
  CHECK(tr.capital_of("A", 1) == doctest::Approx(7.0));
  CHECK(tr.capital_of("B", 1) == doctest::Approx(13.0));
  CHECK(tr.lc == doctest::Approx(0.0));
  CHECK(tr.sc == 0);
  CHECK(tr.violations.empty());
}

TEST_CASE("one reset before the second payment routes everything") {
  const core::Schedule sched{{"e1", {{2, 4.0}}}};
  const core::Trace tr = core::simulate(tiny_net(), tiny_txns(), sched);
  CHECK(tr.executed == std::vector<int>{1, 2});
  CHECK(tr.skipped.empty());
  CHECK(tr.sc == 1);
  // reset 2 -> 4 costs |4 - 2|
  CHECK(tr.lc == doctest::Approx(2.0));
  CHECK(tr.capacity_at("e1", 2) == doctest::Approx(0.0));
  CHECK(tr.capital_of("A", 2) == doctest::Approx(3.0));
  CHECK(core::linear_cost(sched, tr) == doctest::Approx(2.0));
  CHECK(core::step_cost(sched) == 1);
}

TEST_CASE("non-consuming flow checks capacities but never moves money") {
  core::Network net = tiny_net();
  net.mode = core::Mode::NonConsuming;
  const core::Trace tr = core::simulate(net, tiny_txns(), {});
  // capacity never moves, so both payments fit under the original 5
  CHECK(tr.executed == std::vector<int>{1, 2});
  CHECK(tr.skipped.empty());
  CHECK(tr.capacity_at("e1", 2) == doctest::Approx(5.0));
  CHECK(tr.capital_of("A", 2) == doctest::Approx(10.0));
}

TEST_CASE("a reverse hop refills capacity instead of draining it") {
  core::Network net = tiny_net();
  core::TransactionSet txns = {{1, "B", "A", {{"e1", false}}, 4.0}};
  const core::Trace tr = core::simulate(net, txns, {});
  CHECK(tr.executed == std::vector<int>{1});
  CHECK(tr.capacity_at("e1", 1) == doctest::Approx(9.0));
  CHECK(tr.capital_of("B", 1) == doctest::Approx(6.0));
  CHECK(tr.capital_of("A", 1) == doctest::Approx(14.0));
}

TEST_CASE("capital_at is schedule-independent bookkeeping") {
  const core::Network net = tiny_net();
  const core::TransactionSet txns = tiny_txns();
  CHECK(core::capital_at(net, txns, "A", 0) == doctest::Approx(10.0));
  CHECK(core::capital_at(net, txns, "A", 1) == doctest::Approx(7.0));
  CHECK(core::capital_at(net, txns, "A", 2) == doctest::Approx(3.0));
  CHECK(core::capital_at(net, txns, "B", 2) == doctest::Approx(17.0));
  core::Network nets = net;
  nets.mode = core::Mode::NonConsuming;
  CHECK(core::capital_at(nets, txns, "A", 2) == doctest::Approx(10.0));
  CHECK_THROWS(core::capital_at(net, txns, "nope", 0));
}

TEST_CASE("capital overruns are recorded, not fatal") {
  // raising e1 to 12 exceeds A's capital of 10
  const core::Schedule sched{{"e1", {{1, 12.0}}}};
  const core::Trace tr = core::simulate(tiny_net(), tiny_txns(), sched);
  REQUIRE(tr.violations.size() >= 1);
  CHECK(tr.violations[0].kind == "capital");
  CHECK(tr.violations[0].subject == "A");
  CHECK(tr.violations[0].time == 1);
}

TEST_CASE("consuming traces conserve total capital to 1e-9") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const testsupport::TinyInstance inst = testsupport::make_tiny(seed, seed % 3 != 0);
    const core::Trace tr = core::simulate(inst.net, inst.txns, {});
    double total0 = 0.0;
    for (std::size_t i = 0; i < tr.node_ids.size(); ++i) total0 += tr.capital[i][0];
    for (std::size_t t = 1; t < tr.capital[0].size(); ++t) {
      double total = 0.0;
      for (std::size_t i = 0; i < tr.node_ids.size(); ++i) total += tr.capital[i][t];
      CHECK(std::abs(total - total0) <= 1e-9);
    }
  }
}

TEST_CASE("network validation catches structural mistakes") {
  core::Network net = tiny_net();
  CHECK(core::validate_network(net).ok());

  core::Network dup = net;
  dup.nodes.push_back({"A", 1.0});
  CHECK_FALSE(core::validate_network(dup).ok());

  core::Network dangling = net;
  dangling.channels.push_back({"e2", "A", "Z", 1.0});
  CHECK_FALSE(core::validate_network(dangling).ok());

  core::Network self_loop = net;
  self_loop.channels.push_back({"e2", "A", "A", 1.0});
  CHECK_FALSE(core::validate_network(self_loop).ok());

  core::Network negative = net;
  negative.channels[0].capacity0 = -1.0;
  CHECK_FALSE(core::validate_network(negative).ok());

  // initial outgoing capacity above the node's capital
  core::Network broke = net;
  broke.nodes[0].capital0 = 4.0;
  CHECK_FALSE(core::validate_network(broke).ok());
}

TEST_CASE("transaction validation checks times, paths and values") {
  const core::Network net = tiny_net();
  CHECK(core::validate_transactions(net, tiny_txns()).ok());

  core::TransactionSet wrong_time = tiny_txns();
  wrong_time[1].time = 5;
  CHECK_FALSE(core::validate_transactions(net, wrong_time).ok());

  core::TransactionSet bad_value = tiny_txns();
  bad_value[0].value = 0.0;
  CHECK_FALSE(core::validate_transactions(net, bad_value).ok());

  core::TransactionSet unknown_channel = tiny_txns();
  unknown_channel[0].path[0].channel = "e9";
  CHECK_FALSE(core::validate_transactions(net, unknown_channel).ok());

  // path must start at the source and end at the destination
  core::TransactionSet detached = tiny_txns();
  detached[0].source = "B";
  detached[0].dest = "A";
  CHECK_FALSE(core::validate_transactions(net, detached).ok());
}

TEST_CASE("schedule validation wants known channels and increasing times") {
  const core::Network net = tiny_net();
  CHECK(core::validate_schedule(net, {{"e1", {{1, 2.0}, {2, 3.0}}}}, 2).ok());
  CHECK_FALSE(core::validate_schedule(net, {{"e9", {{1, 2.0}}}}, 2).ok());
  CHECK_FALSE(core::validate_schedule(net, {{"e1", {{2, 2.0}, {2, 3.0}}}}, 2).ok());
  CHECK_FALSE(core::validate_schedule(net, {{"e1", {{1, -2.0}}}}, 2).ok());
  CHECK_FALSE(core::validate_schedule(net, {{"e1", {{3, 2.0}}}}, 2).ok());
  CHECK_FALSE(core::validate_schedule(net, {{"e1", {{0, 2.0}}}}, 2).ok());
}

TEST_CASE("simulate refuses malformed inputs outright") {
  CHECK_THROWS_AS(core::simulate(tiny_net(), {{1, "A", "B", {{"e9", true}}, 1.0}}, {}),
                  std::invalid_argument);
  core::Network bad = tiny_net();
  bad.channels[0].capacity0 = -2.0;
  CHECK_THROWS_AS(core::simulate(bad, tiny_txns(), {}), std::invalid_argument);
}
