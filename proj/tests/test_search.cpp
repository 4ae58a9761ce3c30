#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <string>
#include <vector>

#include "pcn/core/io.hpp"
#include "pcn/core/simulate.hpp"
#include "pcn/heur/heur.hpp"
#include "support.hpp"

using namespace pcn;
using testsupport::tiny_net;
using testsupport::tiny_txns;

namespace {

const std::vector<heur::Method> kAllMethods = {heur::Method::Ga, heur::Method::Rhc,
                                               heur::Method::Lahc, heur::Method::Pso,
                                               heur::Method::Sa};

heur::SearchParams params_for(heur::Method m, std::size_t budget, std::uint64_t seed) {
  heur::SearchParams p;
  p.method = m;
  p.budget = budget;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("method names round trip") {
  for (heur::Method m : kAllMethods) {
    CHECK(heur::method_from_name(heur::method_name(m)) == m);
  }
  CHECK_THROWS_AS(heur::method_from_name("tabu"), std::invalid_argument);
}

TEST_CASE("every method finds the single-reset optimum on the tiny instance") {
  for (heur::Method m : kAllMethods) {
    CAPTURE(heur::method_name(m));
    const heur::SearchResult r =
        heur::run_search(tiny_net(), tiny_txns(), params_for(m, 200, 7));
    CHECK(r.best_fitness.value == doctest::Approx(1.0));
    CHECK(r.best_fitness.sc == 1);
    CHECK(r.best_fitness.skips == 0);
    const core::Trace tr = core::simulate(tiny_net(), tiny_txns(), r.best_schedule);
    CHECK(tr.skipped.empty());
    CHECK(tr.violations.empty());
  }
}

TEST_CASE("curves are monotone, end at the best, and respect the budget") {
  const testsupport::TinyInstance inst = testsupport::make_tiny(77, false);
  for (heur::Method m : kAllMethods) {
    CAPTURE(heur::method_name(m));
    const heur::SearchResult r = heur::run_search(inst.net, inst.txns, params_for(m, 150, 3));
    CHECK(r.evaluations <= 150);
    CHECK(r.evaluations >= 1);
    REQUIRE(r.curve.size() == r.evaluations);
    for (std::size_t i = 1; i < r.curve.size(); ++i) CHECK(r.curve[i] <= r.curve[i - 1]);
    CHECK(r.curve.back() == doctest::Approx(r.best_fitness.value));
    CHECK(r.method == m);
    CHECK(r.seed == 3);
  }
}

TEST_CASE("a budget of one evaluation still yields a result") {
  for (heur::Method m : kAllMethods) {
    CAPTURE(heur::method_name(m));
    const heur::SearchResult r =
        heur::run_search(tiny_net(), tiny_txns(), params_for(m, 1, 5));
    CHECK(r.evaluations == 1);
    CHECK(r.curve.size() == 1);
  }
}

TEST_CASE("identical seeds reproduce byte-identical results") {
  const testsupport::TinyInstance inst = testsupport::make_tiny(9, true);
  for (heur::Method m : kAllMethods) {
    CAPTURE(heur::method_name(m));
    const heur::SearchResult a = heur::run_search(inst.net, inst.txns, params_for(m, 120, 11));
    const heur::SearchResult b = heur::run_search(inst.net, inst.txns, params_for(m, 120, 11));
    CHECK(core::canonical_dump(heur::search_result_to_json(a)) ==
          core::canonical_dump(heur::search_result_to_json(b)));

    const heur::SearchResult c = heur::run_search(inst.net, inst.txns, params_for(m, 120, 12));
    // a different seed explores differently (schedules may coincide, the
    // sampled arrays essentially never do)
    CHECK(core::canonical_dump(heur::search_result_to_json(a)) !=
          core::canonical_dump(heur::search_result_to_json(c)));
  }
}

TEST_CASE("parameter validation refuses nonsense") {
  heur::SearchParams p = params_for(heur::Method::Ga, 0, 1);
  CHECK_THROWS_AS(heur::run_search(tiny_net(), tiny_txns(), p), std::invalid_argument);

  p = params_for(heur::Method::Ga, 100, 1);
  p.elite = 80;  // elite beyond population
  CHECK_THROWS_AS(heur::run_search(tiny_net(), tiny_txns(), p), std::invalid_argument);

  p = params_for(heur::Method::Ga, 100, 1);
  p.mutation_rate = 1.5;
  CHECK_THROWS_AS(heur::run_search(tiny_net(), tiny_txns(), p), std::invalid_argument);

  p = params_for(heur::Method::Sa, 100, 1);
  p.alpha = 1.0;  // must strictly decrease the temperature
  CHECK_THROWS_AS(heur::run_search(tiny_net(), tiny_txns(), p), std::invalid_argument);

  p = params_for(heur::Method::Lahc, 100, 1);
  p.history = 0;
  CHECK_THROWS_AS(heur::run_search(tiny_net(), tiny_txns(), p), std::invalid_argument);
}

TEST_CASE("the explicit array length overrides the horizon default") {
  heur::SearchParams p = params_for(heur::Method::Rhc, 50, 2);
  p.L = 5;
  const heur::SearchResult r = heur::run_search(tiny_net(), tiny_txns(), p);
  CHECK(r.best.size() == 5);

  p.L = 0;  // default: twice the number of transactions
  const heur::SearchResult d = heur::run_search(tiny_net(), tiny_txns(), p);
  CHECK(d.best.size() == 4);
}

TEST_CASE("curve csv is line oriented with a header") {
  const std::string csv = heur::curve_to_csv({3.0, 1.0, 1.0});
  CHECK(csv == "evaluation,best_fitness\n1,3.0\n2,1.0\n3,1.0\n");
}

TEST_CASE("search results serialize with every reporting field") {
  const heur::SearchResult r =
      heur::run_search(tiny_net(), tiny_txns(), params_for(heur::Method::Lahc, 60, 4));
  const nlohmann::json j = heur::search_result_to_json(r);
  for (const char* key : {"method", "seed", "evaluations", "fitness", "best", "schedule", "curve"}) {
    CAPTURE(key);
    CHECK(j.contains(key));
  }
  CHECK(j["method"] == "lahc");
  CHECK(j["seed"] == 4);
  CHECK(j["fitness"].contains("sc"));
  CHECK(j["fitness"].contains("skips"));
  CHECK(j["fitness"].contains("value"));
}
