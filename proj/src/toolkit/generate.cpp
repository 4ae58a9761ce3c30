#include <algorithm>
#include <deque>
#include <stdexcept>

#include "pcn/core/validate.hpp"
#include "pcn/toolkit/toolkit.hpp"
#include "pcn/util/rng.hpp"

namespace pcn::toolkit {

namespace {

// Forward-hop distances from every node (BFS layer counts; -1 unreachable).
std::vector<std::vector<int>> forward_distances(const core::Network& net,
                                                const core::NetworkIndex& idx) {
  const std::size_t n = net.nodes.size();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    dist[s][s] = 0;
    std::deque<std::size_t> q{s};
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (std::size_t e : idx.outgoing[u]) {
        const std::size_t w = idx.node_by_id.at(net.channels[e].target);
        if (dist[s][w] < 0) {
          dist[s][w] = dist[s][u] + 1;
          q.push_back(w);
        }
      }
    }
  }
  return dist;
}

}  // namespace

core::TransactionSet gen_transactions(const core::Network& net, const WorkloadSpec& spec) {
  if (spec.count == 0) throw std::invalid_argument("workload needs at least one transaction");
  if (!(spec.lo > 0.0) || spec.lo > spec.hi) {
    throw std::invalid_argument("workload value range needs 0 < lo <= hi");
  }
  const core::ValidationReport vr = validate_network(net);
  if (!vr.ok()) throw std::invalid_argument("workload input: " + vr.problems.front());

  const core::NetworkIndex idx = core::NetworkIndex::build(net);
  const std::size_t n = net.nodes.size();
  const std::vector<std::vector<int>> dist = forward_distances(net, idx);

  bool any_pair = false;
  for (std::size_t u = 0; u < n && !any_pair; ++u) {
    for (std::size_t w = 0; w < n; ++w) {
      if (u != w && dist[u][w] > 0) {
        any_pair = true;
        break;
      }
    }
  }
  if (!any_pair) throw std::runtime_error("no forward-connected node pair exists");

  util::Rng rng(spec.seed);
  core::TransactionSet txns;
  for (std::size_t i = 1; i <= spec.count; ++i) {
    std::size_t s = 0;
    std::size_t d = 0;
    for (std::size_t guard = 0;; ++guard) {
      if (guard > 1000000) throw std::logic_error("pair sampling failed to terminate");
      s = rng.index(n);
      d = rng.index(n);
      if (s != d && dist[s][d] > 0) break;
    }
    const double value = rng.uniform(spec.lo, spec.hi);

    // Walk the shortest-hop path, at each node taking the smallest channel
    // id among those that stay on a shortest path.
    core::Transaction tx{static_cast<int>(i), net.nodes[s].id, net.nodes[d].id, {}, value};
    std::size_t u = s;
    while (u != d) {
      const core::Channel* best = nullptr;
      std::size_t best_target = 0;
      for (std::size_t e : idx.outgoing[u]) {
        const core::Channel& ch = net.channels[e];
        const std::size_t w = idx.node_by_id.at(ch.target);
        if (dist[w][d] != dist[u][d] - 1) continue;
        if (best == nullptr || ch.id < best->id) {
          best = &ch;
          best_target = w;
        }
      }
      if (best == nullptr) throw std::logic_error("shortest-path walk lost the target");
      tx.path.push_back({best->id, true});
      u = best_target;
    }
    txns.push_back(std::move(tx));
  }
  return txns;
}

}  // namespace pcn::toolkit
