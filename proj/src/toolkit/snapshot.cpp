#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "pcn/core/validate.hpp"
#include "pcn/toolkit/toolkit.hpp"
#include "pcn/util/rng.hpp"

namespace pcn::toolkit {

namespace {

const nlohmann::json& need(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw std::runtime_error(std::string("snapshot: missing field ") + key);
  return *it;
}

}  // namespace

SnapshotGraph snapshot_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::runtime_error("snapshot: top level must be an object");
  SnapshotGraph g;
  for (const nlohmann::json& n : need(j, "nodes")) {
    g.nodes.push_back(need(n, "id").get<std::string>());
  }
  for (const nlohmann::json& c : need(j, "channels")) {
    SnapshotGraph::Edge e;
    e.id = need(c, "id").get<std::string>();
    e.source = need(c, "source").get<std::string>();
    e.target = need(c, "target").get<std::string>();
    if (c.contains("capacity_sat")) {
      e.capacity = c.at("capacity_sat").get<double>() / 1e8;
    } else {
      e.capacity = need(c, "capacity").get<double>();
    }
    g.channels.push_back(std::move(e));
  }
  return g;
}

SnapshotGraph load_snapshot(const std::string& path) {
  return snapshot_from_json(nlohmann::json::parse(core::read_file(path)));
}

core::Network import_snapshot(const SnapshotGraph& raw, double slack) {
  if (slack < 0.0) throw std::invalid_argument("capital slack must be nonnegative");
  std::set<std::string> ids(raw.nodes.begin(), raw.nodes.end());
  if (ids.size() != raw.nodes.size()) throw std::runtime_error("snapshot: duplicate node id");

  core::Network net;
  net.mode = core::Mode::Consuming;
  std::map<std::string, double> outgoing_sum;
  for (const std::string& n : raw.nodes) outgoing_sum[n] = 0.0;

  std::set<std::string> channel_ids;
  for (const SnapshotGraph::Edge& e : raw.channels) {
    if (!ids.count(e.source) || !ids.count(e.target)) {
      throw std::runtime_error("snapshot: channel " + e.id + " references a missing node");
    }
    if (e.capacity < 0.0) {
      throw std::runtime_error("snapshot: channel " + e.id + " has negative capacity");
    }
    if (!channel_ids.insert(e.id).second) {
      throw std::runtime_error("snapshot: duplicate channel id " + e.id);
    }
    net.channels.push_back({e.id, e.source, e.target, e.capacity});
    outgoing_sum[e.source] += e.capacity;
  }
  for (const std::string& n : raw.nodes) {
    net.nodes.push_back({n, slack * outgoing_sum[n]});
  }
  return net;
}

core::Network sample_connected_subgraph(const core::Network& net, std::size_t target,
                                        std::uint64_t seed) {
  const core::ValidationReport vr = validate_network(net);
  if (!vr.ok()) throw std::invalid_argument("subsample input: " + vr.problems.front());
  if (target == 0) throw std::invalid_argument("subsample target must be positive");
  if (target > net.nodes.size()) {
    throw std::invalid_argument("subsample target exceeds the node count");
  }

  const core::NetworkIndex idx = core::NetworkIndex::build(net);
  // Undirected adjacency, neighbors sorted by id so expansion order is a
  // pure function of the graph, not of channel storage order.
  std::vector<std::set<std::string>> adj(net.nodes.size());
  for (const core::Channel& ch : net.channels) {
    adj[idx.node_by_id.at(ch.source)].insert(ch.target);
    adj[idx.node_by_id.at(ch.target)].insert(ch.source);
  }

  util::Rng rng(seed);
  const std::size_t start = rng.index(net.nodes.size());
  std::set<std::size_t> picked{start};
  std::deque<std::size_t> frontier{start};
  while (picked.size() < target) {
    if (frontier.empty()) {
      throw std::runtime_error("start node's component is smaller than the target size");
    }
    const std::size_t u = frontier.front();
    frontier.pop_front();
    for (const std::string& nbr : adj[u]) {
      if (picked.size() >= target) break;
      const std::size_t w = idx.node_by_id.at(nbr);
      if (picked.insert(w).second) frontier.push_back(w);
    }
  }

  core::Network out;
  out.mode = net.mode;
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    if (picked.count(i)) out.nodes.push_back(net.nodes[i]);
  }
  for (const core::Channel& ch : net.channels) {
    if (picked.count(idx.node_by_id.at(ch.source)) && picked.count(idx.node_by_id.at(ch.target))) {
      out.channels.push_back(ch);
    }
  }
  return out;
}

}  // namespace pcn::toolkit
