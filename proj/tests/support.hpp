#pragma once

// Shared fixtures for the test suites: the canonical two-transaction
// instance most examples are written against, and a seeded generator of
// tiny random instances small enough for the exhaustive oracles.

#include <string>
#include <vector>

#include "pcn/core/model.hpp"
#include "pcn/util/rng.hpp"

namespace testsupport {

// One channel A->B holding 5, payments of 3 then 4. Unmodified, the second
// payment cannot pass (5 - 3 = 2 < 4); one well-placed modification fixes it.
inline pcn::core::Network tiny_net() {
  pcn::core::Network net;
  net.mode = pcn::core::Mode::Consuming;
  net.nodes = {{"A", 10.0}, {"B", 10.0}};
  net.channels = {{"e1", "A", "B", 5.0}};
  return net;
}

inline pcn::core::TransactionSet tiny_txns() {
  return {{1, "A", "B", {{"e1", true}}, 3.0},
          {2, "A", "B", {{"e1", true}}, 4.0}};
}

struct TinyInstance {
  pcn::core::Network net;
  pcn::core::TransactionSet txns;
};

// Random instances sized for the brute-force oracles: at most 3 nodes,
// 4 channels, 6 transactions, forward-only simple paths, consuming mode.
// Money amounts are multiples of 0.25 so no comparison ever sits on a
// rounding edge. When `generous` is set, every node's capital covers its
// initial outgoing capacities plus everything it will ever send, so capital
// never becomes the bottleneck and the instance is feasible by construction;
// otherwise capitals are merely legal and transactions may be unroutable.
inline TinyInstance make_tiny(std::uint64_t seed, bool generous = true) {
  pcn::util::Rng rng(seed);
  auto quarter = [&](double lo, double hi) {
    const std::size_t steps = static_cast<std::size_t>((hi - lo) / 0.25);
    return lo + 0.25 * static_cast<double>(rng.index(steps + 1));
  };

  TinyInstance inst;
  inst.net.mode = pcn::core::Mode::Consuming;
  const bool three = rng.index(4) != 0;  // usually 3 nodes

  // Channels point from earlier to later node names, so every path that
  // walks "uphill" is a valid forward path.
  std::vector<std::pair<std::string, std::string>> ends = {{"A", "B"}};
  if (three) {
    ends.push_back({"B", "C"});
    if (rng.index(2)) ends.push_back({"A", "C"});
    if (rng.index(3) == 0) ends.push_back({"A", "B"});  // parallel channel
  }
  for (std::size_t i = 0; i < ends.size(); ++i) {
    inst.net.channels.push_back({"e" + std::to_string(i + 1), ends[i].first, ends[i].second,
                                 quarter(0.0, 2.0)});
  }

  const int n = 2 + static_cast<int>(rng.index(5));  // 2..6 transactions
  const double max_value = 3.0;
  for (int t = 1; t <= n; ++t) {
    pcn::core::Transaction tx;
    tx.time = t;
    tx.value = quarter(0.5, max_value);
    // Path choices: any single channel, or A->B->C through the first
    // channel of each leg when the graph has both legs.
    const std::size_t c = rng.index(inst.net.channels.size() + (three ? 1 : 0));
    if (c < inst.net.channels.size()) {
      const pcn::core::Channel& ch = inst.net.channels[c];
      tx.source = ch.source;
      tx.dest = ch.target;
      tx.path = {{ch.id, true}};
    } else {
      tx.source = "A";
      tx.dest = "C";
      tx.path = {{"e1", true}, {"e2", true}};
    }
    inst.txns.push_back(std::move(tx));
  }

  for (const std::string& name : {std::string("A"), std::string("B"), std::string("C")}) {
    if (!three && name == "C") continue;
    double out_sum = 0.0;
    for (const pcn::core::Channel& ch : inst.net.channels) {
      if (ch.source == name) out_sum += ch.capacity0;
    }
    // Consuming mode drains capital permanently, so "can raise everything
    // once" is not enough; cover the node's whole outgoing volume instead.
    double sends = 0.0;
    for (const pcn::core::Transaction& tx : inst.txns) {
      for (const pcn::core::Hop& hop : tx.path) {
        for (const pcn::core::Channel& ch : inst.net.channels) {
          if (ch.id == hop.channel && ch.source == name) sends += tx.value;
        }
      }
    }
    const double capital = generous ? out_sum + sends + 1.0
                                    : out_sum + quarter(0.0, max_value);
    inst.net.nodes.push_back({name, capital});
  }
  return inst;
}

}  // namespace testsupport
