#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "pcn/core/simulate.hpp"
#include "pcn/lp/lp.hpp"
#include "support.hpp"

using namespace pcn;
using testsupport::tiny_net;
using testsupport::tiny_txns;

namespace {

int count_rows_with_prefix(const lp::LpProblem& p, const std::string& prefix) {
  int n = 0;
  for (const lp::LpRow& r : p.rows) {
    if (r.name.rfind(prefix, 0) == 0) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("the two-payment single-channel program has the expected shape") {
  const lp::LpProblem p = lp::build_lp(tiny_net(), tiny_txns());
  // c[e1][1], c[e1][2], then dplus/dminus per slot
  CHECK(p.vars.size() == 6);
  CHECK(p.vars[0] == "c[e1][1]");
  CHECK(count_rows_with_prefix(p, "balance[") == 2);
  CHECK(count_rows_with_prefix(p, "route[") == 2);
  // only A has outgoing channels, so one capital row per step
  CHECK(count_rows_with_prefix(p, "cap[") == 2);
  // only the deltas carry cost
  CHECK(p.objective[0] == doctest::Approx(0.0));
  CHECK(p.objective[2] == doctest::Approx(1.0));

  const lp::LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == lp::LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(2.0).epsilon(1e-9));

  const core::Schedule sched = lp::extract_schedule(tiny_net(), tiny_txns(), sol);
  REQUIRE(sched.count("e1") == 1);
  REQUIRE(sched.at("e1").size() == 1);
  CHECK(sched.at("e1")[0].time == 2);
  CHECK(sched.at("e1")[0].value == doctest::Approx(4.0));
}

TEST_CASE("payments beyond the node's capital make the program infeasible") {
  core::Network net = tiny_net();
  const core::TransactionSet txns{{1, "A", "B", {{"e1", true}}, 11.0}};
  const lp::LpSolution sol = lp::solve_lp(lp::build_lp(net, txns));
  CHECK(sol.status == lp::LpStatus::Infeasible);
}

TEST_CASE("an empty transaction sequence costs nothing") {
  const lp::LpProblem p = lp::build_lp(tiny_net(), {});
  CHECK(p.vars.empty());
  const lp::LpSolution sol = solve_lp(p);
  CHECK(sol.status == lp::LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(0.0));
  CHECK(lp::extract_schedule(tiny_net(), {}, sol).empty());
}

TEST_CASE("optimal schedules replay cleanly and match the objective") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const testsupport::TinyInstance inst = testsupport::make_tiny(seed, true);
    CAPTURE(seed);
    const lp::LpSolution sol = lp::solve_lp(lp::build_lp(inst.net, inst.txns));
    REQUIRE(sol.status == lp::LpStatus::Optimal);
    const core::Schedule sched = lp::extract_schedule(inst.net, inst.txns, sol);
    const core::Trace tr = core::simulate(inst.net, inst.txns, sched);
    CHECK(tr.skipped.empty());
    CHECK(tr.violations.empty());
    CHECK(tr.lc == doctest::Approx(sol.objective).epsilon(1e-6));
  }
}

TEST_CASE("restricted programs only admit the listed slots") {
  // a raise at step 2 works (reset to 4), and so does a single up-front
  // raise to 7 at step 1; with no slots at all the second payment is stuck
  const auto slot = [](std::size_t e, int t) { return lp::ModSlot{e, t}; };

  lp::LpSolution with_step2 =
      lp::solve_lp(lp::build_lp_restricted(tiny_net(), tiny_txns(), {slot(0, 2)}));
  CHECK(with_step2.status == lp::LpStatus::Optimal);

  lp::LpSolution step1_only =
      lp::solve_lp(lp::build_lp_restricted(tiny_net(), tiny_txns(), {slot(0, 1)}));
  CHECK(step1_only.status == lp::LpStatus::Optimal);

  lp::LpSolution no_slots = lp::solve_lp(lp::build_lp_restricted(tiny_net(), tiny_txns(), {}));
  CHECK(no_slots.status == lp::LpStatus::Infeasible);

  const core::Schedule sched =
      lp::extract_schedule_restricted(tiny_net(), tiny_txns(), {slot(0, 2)}, with_step2);
  const core::Trace tr = core::simulate(tiny_net(), tiny_txns(), sched);
  CHECK(tr.skipped.empty());
  CHECK(tr.violations.empty());
}

TEST_CASE("raw simplex solves a textbook minimum") {
  // min -x - 2y  s.t.  x + y <= 4, y <= 3  ->  x = 1, y = 3, obj -7
  lp::LpProblem p;
  p.vars = {"x", "y"};
  p.objective = {-1.0, -2.0};
  p.rows.push_back({"r1", {{0, 1.0}, {1, 1.0}}, lp::Rel::Le, 4.0});
  p.rows.push_back({"r2", {{1, 1.0}}, lp::Rel::Le, 3.0});
  const lp::LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == lp::LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(-7.0));
  CHECK(sol.x[0] == doctest::Approx(1.0));
  CHECK(sol.x[1] == doctest::Approx(3.0));
}

TEST_CASE("raw simplex detects unbounded programs") {
  lp::LpProblem p;
  p.vars = {"x"};
  p.objective = {-1.0};
  p.rows.push_back({"r1", {{0, 1.0}}, lp::Rel::Ge, 1.0});
  CHECK(solve_lp(p).status == lp::LpStatus::Unbounded);
}

TEST_CASE("raw simplex handles equality rows") {
  // min x + y  s.t.  x + y = 2, x - y = 0  ->  x = y = 1
  lp::LpProblem p;
  p.vars = {"x", "y"};
  p.objective = {1.0, 1.0};
  p.rows.push_back({"eq1", {{0, 1.0}, {1, 1.0}}, lp::Rel::Eq, 2.0});
  p.rows.push_back({"eq2", {{0, 1.0}, {1, -1.0}}, lp::Rel::Eq, 0.0});
  const lp::LpSolution sol = solve_lp(p);
  REQUIRE(sol.status == lp::LpStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(1.0));
  CHECK(sol.x[1] == doctest::Approx(1.0));
}

TEST_CASE("dump_lp is line oriented and names every row") {
  const std::string text = lp::dump_lp(lp::build_lp(tiny_net(), tiny_txns()));
  CHECK(text.rfind("min:", 0) == 0);
  CHECK(text.find("balance[e1][1]:") != std::string::npos);
  CHECK(text.find("route[e1][2]:") != std::string::npos);
  CHECK(text.find("cap[A][1]:") != std::string::npos);
  CHECK(text.back() == '\n');
}
