#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pcn/core/io.hpp"
#include "pcn/core/model.hpp"
#include "pcn/heur/heur.hpp"

namespace pcn::toolkit {

// A channel-graph snapshot one step before becoming a Network: just ids and
// capacities, no capitals (public snapshots do not expose those).
//
// File format:
//   {"nodes": [{"id": "n1"}, ...],
//    "channels": [{"id": "c1", "source": "n1", "target": "n2",
//                  "capacity_sat": 5000000}, ...]}
// `capacity_sat` is divided by 1e8 on parse; a plain `capacity` field is
// taken as already being in the working money unit.
struct SnapshotGraph {
  struct Edge {
    std::string id;
    std::string source;
    std::string target;
    double capacity = 0.0;
  };
  std::vector<std::string> nodes;
  std::vector<Edge> channels;
};

SnapshotGraph snapshot_from_json(const nlohmann::json& j);
SnapshotGraph load_snapshot(const std::string& path);

// Snapshot -> Network. Channels map 1:1; each node's capital0 is slack times
// the sum of its outgoing capacities, so slack >= 1 keeps the initial state
// valid (1.0 making it exactly tight). Throws on dangling endpoints,
// duplicate ids, negative capacities, or slack < 0.
core::Network import_snapshot(const SnapshotGraph& raw, double slack = 1.5);

// Breadth-first ball around a seeded random start node, ignoring edge
// direction, grown until `target` nodes are collected; keeps the channels
// both of whose endpoints made it in. Deterministic per seed. Throws if the
// start's weak component is smaller than the target.
core::Network sample_connected_subgraph(const core::Network& net, std::size_t target,
                                        std::uint64_t seed);

struct WorkloadSpec {
  std::size_t count = 1;  // transactions to generate, one per step 1..count
  double lo = 1.0;        // value range for uniform sampling
  double hi = 1.0;
  std::uint64_t seed = 1;
};

// Random payments: distinct (source, dest) pairs joined by a forward path,
// rejected and redrawn otherwise; the path is the shortest-hop forward path,
// ties broken toward lexicographically smaller channel ids; values uniform
// in [lo, hi]. Deterministic per seed. Throws if no ordered pair of nodes is
// forward-connected at all.
core::TransactionSet gen_transactions(const core::Network& net, const WorkloadSpec& spec);

struct BenchInstance {
  std::string name;
  std::string network_file;
  std::string transactions_file;
};

// Config file shape:
//   {"instances": [{"name": "i1", "network": "net.json",
//                   "transactions": "txns.jsonl"}],
//    "methods": ["ga", "rhc", "lahc", "pso", "sa"],
//    "budget": 2000, "repetitions": 3,
//    "seeds": [1, 2, 3],          // optional; defaults to 1..repetitions
//    "out": "bench_out"}          // optional; CLI --out overrides
struct BenchConfig {
  std::vector<BenchInstance> instances;
  std::vector<heur::Method> methods;
  std::size_t budget = 2000;
  std::size_t repetitions = 1;
  std::vector<std::uint64_t> seeds;
  std::string out_dir = "bench_out";
};

// `base_dir`, when non-empty, anchors relative instance paths (callers pass
// the config file's directory).
BenchConfig bench_config_from_json(const nlohmann::json& j, const std::string& base_dir = "");

struct BenchReport {
  nlohmann::json summary;          // what summary.json holds
  std::vector<std::string> files;  // everything written, relative to out_dir
  std::size_t failures = 0;
};

// Runs every instance x method x repetition, writing per-run convergence
// CSVs, per-method aggregate CSVs (mean/min/max across repetitions), one
// multi-series SVG chart per instance, and summary.json. A failing run is
// recorded in the summary and the rest continue. All writes are atomic.
BenchReport run_bench(const BenchConfig& cfg);

struct CurveSeries {
  std::string name;
  std::vector<double> values;
};

// Simple fixed-size (960x540 viewBox) line chart: x = evaluation index,
// y = best fitness, one polyline per series plus axes and a legend.
std::string render_svg_chart(const std::string& title, const std::vector<CurveSeries>& series);

}  // namespace pcn::toolkit
