#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace pcn::core {

// Feasibility comparisons on money amounts use this tolerance throughout.
inline constexpr double kTol = 1e-9;

// Whether transaction flow depletes capacities/capitals (consuming) or only
// checks them (non-consuming). The hardness constructions need the latter:
// their proofs hold node capital constant across repeated transfers.
enum class Mode { Consuming, NonConsuming };

struct Node {
  std::string id;
  double capital0 = 0.0;
};

struct Channel {
  std::string id;
  std::string source;
  std::string target;
  double capacity0 = 0.0;
};

struct Network {
  Mode mode = Mode::Consuming;
  std::vector<Node> nodes;
  std::vector<Channel> channels;
};

// One path element: a channel plus the direction it is traversed in.
// A forward hop over (u -> v) moves value u to v; a reverse hop over the
// same channel moves value v to u (and refills the channel's capacity).
struct Hop {
  std::string channel;
  bool forward = true;
};

struct Transaction {
  int time = 0;  // 1-based step index; exactly one transaction per step
  std::string source;
  std::string dest;
  std::vector<Hop> path;
  double value = 0.0;
};

using TransactionSet = std::vector<Transaction>;

// One capacity reset: at step `time`, the channel's capacity becomes `value`.
struct ModEntry {
  int time = 0;
  double value = 0.0;
};

// Per-channel modification lists, times strictly increasing within a channel.
// std::map keeps channel iteration order deterministic.
using Schedule = std::map<std::string, std::vector<ModEntry>>;

struct Violation {
  std::string kind;     // currently only "capital"
  std::string subject;  // node or channel id
  int time = 0;
};

// Full simulation record. Column t of the tables is the state after step t
// completed (modifications + flow); column 0 is the initial state.
struct Trace {
  std::vector<std::string> channel_ids;  // row order of `capacity`
  std::vector<std::string> node_ids;     // row order of `capital`
  std::vector<std::vector<double>> capacity;  // [channel][0..n]
  std::vector<std::vector<double>> capital;   // [node][0..n]
  std::vector<int> executed;  // ascending
  std::vector<int> skipped;   // ascending
  double lc = 0.0;
  int sc = 0;
  std::vector<Violation> violations;

  double capacity_at(const std::string& channel, int t) const;
  double capital_of(const std::string& node, int t) const;
};

struct PenaltyConfig {
  double penalty_per_skip = 0.0;

  // Default: large enough that one skip outweighs any achievable step cost.
  static PenaltyConfig for_horizon(int n) { return {1000.0 * (n + 1)}; }
};

// Lookup tables derived from a Network; built once, shared by the hot loops.
struct NetworkIndex {
  std::unordered_map<std::string, std::size_t> node_by_id;
  std::unordered_map<std::string, std::size_t> channel_by_id;
  std::vector<std::vector<std::size_t>> outgoing;  // node idx -> channel idxs

  static NetworkIndex build(const Network& net);
};

const char* mode_name(Mode m);

}  // namespace pcn::core
