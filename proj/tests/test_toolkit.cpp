#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

#include "pcn/core/simulate.hpp"
#include "pcn/core/validate.hpp"
#include "pcn/toolkit/toolkit.hpp"

using namespace pcn;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "pcn_toolkit_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

toolkit::SnapshotGraph line_snapshot() {
  // n1 -> n2 -> n3 plus a reverse edge n3 -> n1
  toolkit::SnapshotGraph g;
  g.nodes = {"n1", "n2", "n3"};
  g.channels = {{"c1", "n1", "n2", 10.0}, {"c2", "n2", "n3", 4.0}, {"c3", "n3", "n1", 2.0}};
  return g;
}

}  // namespace

TEST_CASE("imports scale capitals from outgoing capacity") {
  const core::Network net = toolkit::import_snapshot(line_snapshot(), 1.5);
  CHECK(net.mode == core::Mode::Consuming);
  REQUIRE(net.nodes.size() == 3);
  CHECK(net.nodes[0].capital0 == doctest::Approx(15.0));
  CHECK(net.nodes[1].capital0 == doctest::Approx(6.0));
  CHECK(net.nodes[2].capital0 == doctest::Approx(3.0));
  CHECK(core::validate_network(net).ok());

  // slack 1.0 sits exactly on the capital constraint and still validates
  CHECK(core::validate_network(toolkit::import_snapshot(line_snapshot(), 1.0)).ok());
  CHECK_THROWS_AS(toolkit::import_snapshot(line_snapshot(), -0.5), std::invalid_argument);
}

TEST_CASE("imports reject broken snapshots") {
  toolkit::SnapshotGraph dangling = line_snapshot();
  dangling.channels.push_back({"c4", "n1", "n9", 1.0});
  CHECK_THROWS_AS(toolkit::import_snapshot(dangling, 1.5), std::runtime_error);

  toolkit::SnapshotGraph negative = line_snapshot();
  negative.channels[0].capacity = -1.0;
  CHECK_THROWS_AS(toolkit::import_snapshot(negative, 1.5), std::runtime_error);

  toolkit::SnapshotGraph dup = line_snapshot();
  dup.nodes.push_back("n1");
  CHECK_THROWS_AS(toolkit::import_snapshot(dup, 1.5), std::runtime_error);
}

TEST_CASE("snapshot parsing converts satoshi capacities") {
  const nlohmann::json j = {
      {"nodes", {{{"id", "a"}}, {{"id", "b"}}}},
      {"channels",
       {{{"id", "c"}, {"source", "a"}, {"target", "b"}, {"capacity_sat", 250000000}}}}};
  const toolkit::SnapshotGraph g = toolkit::snapshot_from_json(j);
  REQUIRE(g.channels.size() == 1);
  CHECK(g.channels[0].capacity == doctest::Approx(2.5));

  const nlohmann::json plain = {
      {"nodes", {{{"id", "a"}}, {{"id", "b"}}}},
      {"channels", {{{"id", "c"}, {"source", "a"}, {"target", "b"}, {"capacity", 2.5}}}}};
  CHECK(toolkit::snapshot_from_json(plain).channels[0].capacity == doctest::Approx(2.5));
}

TEST_CASE("subgraph sampling keeps induced channels and node order") {
  const core::Network net = toolkit::import_snapshot(line_snapshot(), 1.5);

  const core::Network full = toolkit::sample_connected_subgraph(net, 3, 1);
  CHECK(full.nodes.size() == 3);
  CHECK(full.channels.size() == 3);
  CHECK(full.nodes[0].id == "n1");  // original order survives

  const core::Network one = toolkit::sample_connected_subgraph(net, 1, 5);
  CHECK(one.nodes.size() == 1);
  CHECK(one.channels.empty());
  CHECK(core::validate_network(one).ok());

  // deterministic per seed
  const core::Network a = toolkit::sample_connected_subgraph(net, 2, 9);
  const core::Network b = toolkit::sample_connected_subgraph(net, 2, 9);
  CHECK(core::canonical_dump(core::network_to_json(a)) ==
        core::canonical_dump(core::network_to_json(b)));

  CHECK_THROWS_AS(toolkit::sample_connected_subgraph(net, 4, 1), std::invalid_argument);
}

TEST_CASE("sampling notices disconnected components") {
  toolkit::SnapshotGraph g;
  g.nodes = {"a", "b", "c", "d"};
  g.channels = {{"c1", "a", "b", 1.0}, {"c2", "c", "d", 1.0}};
  const core::Network net = toolkit::import_snapshot(g, 1.5);
  // every weak component has 2 nodes; asking for 3 must fail on any seed
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    CHECK_THROWS_AS(toolkit::sample_connected_subgraph(net, 3, seed), std::runtime_error);
  }
}

TEST_CASE("generated payments ride shortest forward paths") {
  toolkit::SnapshotGraph g;
  g.nodes = {"a", "b", "c"};
  // two forward routes a->c: direct c3 and two-hop c1+c2; shortest wins
  g.channels = {{"c1", "a", "b", 5.0}, {"c2", "b", "c", 5.0}, {"c3", "a", "c", 5.0}};
  const core::Network net = toolkit::import_snapshot(g, 2.0);

  toolkit::WorkloadSpec spec;
  spec.count = 40;
  spec.lo = 0.5;
  spec.hi = 1.5;
  spec.seed = 3;
  const core::TransactionSet txns = toolkit::gen_transactions(net, spec);
  REQUIRE(txns.size() == 40);
  CHECK(core::validate_transactions(net, txns).ok());
  for (const core::Transaction& tx : txns) {
    CHECK(tx.time >= 1);
    CHECK(tx.value >= 0.5);
    CHECK(tx.value <= 1.5);
    CHECK(tx.source != tx.dest);
    for (const core::Hop& h : tx.path) CHECK(h.forward);
    if (tx.source == "a" && tx.dest == "c") {
      REQUIRE(tx.path.size() == 1);  // never the two-hop detour
      CHECK(tx.path[0].channel == "c3");
    }
  }

  // deterministic per seed
  const core::TransactionSet again = toolkit::gen_transactions(net, spec);
  CHECK(core::transactions_to_jsonl(again) == core::transactions_to_jsonl(txns));
}

TEST_CASE("tie breaks favor the smaller channel id") {
  toolkit::SnapshotGraph g;
  g.nodes = {"a", "b"};
  g.channels = {{"c2", "a", "b", 5.0}, {"c1", "a", "b", 5.0}};
  const core::Network net = toolkit::import_snapshot(g, 2.0);
  toolkit::WorkloadSpec spec;
  spec.count = 10;
  spec.seed = 2;
  const core::TransactionSet txns = toolkit::gen_transactions(net, spec);
  for (const core::Transaction& tx : txns) {
    REQUIRE(tx.path.size() == 1);
    CHECK(tx.path[0].channel == "c1");
  }
}

TEST_CASE("generation fails cleanly when nothing is forward-connected") {
  core::Network net;
  net.nodes = {{"a", 1.0}, {"b", 1.0}};
  // no channels at all
  toolkit::WorkloadSpec spec;
  spec.count = 1;
  CHECK_THROWS_AS(toolkit::gen_transactions(net, spec), std::runtime_error);
}

TEST_CASE("the bench harness writes curves, aggregates, charts and a summary") {
  const fs::path dir = scratch_dir() / "bench1";
  fs::create_directories(dir);

  const core::Network net = toolkit::import_snapshot(line_snapshot(), 1.5);
  core::save_network(net, (dir / "net.json").string());
  toolkit::WorkloadSpec spec;
  spec.count = 6;
  spec.lo = 0.5;
  spec.hi = 2.0;
  spec.seed = 4;
  core::save_transactions(toolkit::gen_transactions(net, spec), (dir / "txns.jsonl").string());

  toolkit::BenchConfig cfg;
  cfg.instances = {{"line", (dir / "net.json").string(), (dir / "txns.jsonl").string()}};
  cfg.methods = {heur::Method::Rhc, heur::Method::Sa};
  cfg.budget = 120;
  cfg.repetitions = 2;
  cfg.out_dir = (dir / "out").string();

  const toolkit::BenchReport rep = toolkit::run_bench(cfg);
  CHECK(rep.failures == 0);
  for (const char* name :
       {"line_rhc_r1.csv", "line_rhc_r2.csv", "line_rhc_agg.csv", "line_sa_r1.csv",
        "line_sa_r2.csv", "line_sa_agg.csv", "line.svg", "summary.json"}) {
    CAPTURE(name);
    CHECK(fs::exists(dir / "out" / name));
  }

  const std::string run_csv = slurp(dir / "out" / "line_rhc_r1.csv");
  CHECK(run_csv.rfind("evaluation,best_fitness\n", 0) == 0);
  const std::string agg_csv = slurp(dir / "out" / "line_rhc_agg.csv");
  CHECK(agg_csv.rfind("evaluation,mean,min,max\n", 0) == 0);

  const std::string svg = slurp(dir / "out" / "line.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("rhc") != std::string::npos);
  CHECK(svg.find("sa") != std::string::npos);

  const nlohmann::json summary = nlohmann::json::parse(slurp(dir / "out" / "summary.json"));
  CHECK(summary["budget"] == 120);
  CHECK(summary["repetitions"] == 2);
  REQUIRE(summary["instances"].size() == 1);

  // byte-identical on a second run
  const toolkit::BenchReport rep2 = toolkit::run_bench(cfg);
  CHECK(rep2.failures == 0);
  CHECK(slurp(dir / "out" / "line_rhc_r1.csv") == run_csv);
  CHECK(core::canonical_dump(rep2.summary) == core::canonical_dump(rep.summary));
}

TEST_CASE("bench records failing runs and keeps going") {
  const fs::path dir = scratch_dir() / "bench2";
  fs::create_directories(dir);
  const core::Network net = toolkit::import_snapshot(line_snapshot(), 1.5);
  core::save_network(net, (dir / "net.json").string());
  toolkit::WorkloadSpec spec;
  spec.count = 3;
  core::save_transactions(toolkit::gen_transactions(net, spec), (dir / "txns.jsonl").string());

  toolkit::BenchConfig cfg;
  cfg.instances = {{"ghost", (dir / "missing.json").string(), (dir / "txns.jsonl").string()},
                   {"line", (dir / "net.json").string(), (dir / "txns.jsonl").string()}};
  cfg.methods = {heur::Method::Rhc};
  cfg.budget = 40;
  cfg.repetitions = 1;
  cfg.out_dir = (dir / "out").string();

  const toolkit::BenchReport rep = toolkit::run_bench(cfg);
  CHECK(rep.failures == 1);
  CHECK(fs::exists(dir / "out" / "line_rhc_r1.csv"));
  CHECK_FALSE(fs::exists(dir / "out" / "ghost_rhc_r1.csv"));
  REQUIRE(rep.summary["failures"].size() == 1);
  CHECK(rep.summary["failures"][0]["instance"] == "ghost");
}

TEST_CASE("bench config parsing resolves paths against the config directory") {
  nlohmann::json j;
  j["instances"] = {{{"name", "i1"}, {"network", "n.json"}, {"transactions", "t.jsonl"}}};
  j["methods"] = {"rhc", "lahc"};
  j["budget"] = 500;
  j["repetitions"] = 2;
  j["seeds"] = {7, 8};
  j["out"] = "results";
  const toolkit::BenchConfig cfg = toolkit::bench_config_from_json(j, "/base");
  REQUIRE(cfg.instances.size() == 1);
  CHECK(cfg.instances[0].network_file == "/base/n.json");
  CHECK(cfg.instances[0].transactions_file == "/base/t.jsonl");
  REQUIRE(cfg.methods.size() == 2);
  CHECK(cfg.methods[1] == heur::Method::Lahc);
  CHECK(cfg.budget == 500);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{7, 8});
  CHECK(cfg.out_dir == "/base/results");

  CHECK_THROWS(toolkit::bench_config_from_json(nlohmann::json::object(), ""));
}

TEST_CASE("svg charts stay well formed for edge-case series") {
  const std::string empty = toolkit::render_svg_chart("nothing", {});
  CHECK(empty.find("<svg") != std::string::npos);

  const std::string flat = toolkit::render_svg_chart("flat", {{"m", {2.0, 2.0, 2.0}}});
  CHECK(flat.find("<polyline") != std::string::npos);

  const std::string single = toolkit::render_svg_chart("single", {{"m", {1.0}}});
  CHECK(single.find("<svg") != std::string::npos);
}
