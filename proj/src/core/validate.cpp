#include "pcn/core/validate.hpp"

#include <set>
#include <sstream>

#include "pcn/core/model.hpp"

namespace pcn::core {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

ValidationReport validate_network(const Network& net) {
  ValidationReport rep;
  std::set<std::string> node_ids;
  for (const Node& nd : net.nodes) {
    if (nd.id.empty()) rep.problems.push_back("node with empty id");
    if (!node_ids.insert(nd.id).second) rep.problems.push_back("duplicate node id: " + nd.id);
    if (nd.capital0 < 0.0) rep.problems.push_back("negative capital at node " + nd.id);
  }
  std::set<std::string> channel_ids;
  for (const Channel& ch : net.channels) {
    if (ch.id.empty()) rep.problems.push_back("channel with empty id");
    if (!channel_ids.insert(ch.id).second) {
      rep.problems.push_back("duplicate channel id: " + ch.id);
    }
    if (!node_ids.count(ch.source)) {
      rep.problems.push_back("channel " + ch.id + " references unknown source " + ch.source);
    }
    if (!node_ids.count(ch.target)) {
      rep.problems.push_back("channel " + ch.id + " references unknown target " + ch.target);
    }
    if (ch.source == ch.target) rep.problems.push_back("channel " + ch.id + " is a self-loop");
    if (ch.capacity0 < 0.0) rep.problems.push_back("negative capacity on channel " + ch.id);
  }
  // Capital constraint at t=0: each node must be able to back its outgoing
  // capacities. Only checkable once ids resolved, so skip on broken refs.
  if (rep.ok()) {
    const NetworkIndex idx = NetworkIndex::build(net);
    for (std::size_t u = 0; u < net.nodes.size(); ++u) {
      double out = 0.0;
      for (std::size_t e : idx.outgoing[u]) out += net.channels[e].capacity0;
      if (out > net.nodes[u].capital0 + kTol) {
        rep.problems.push_back("capital constraint violated at node " + net.nodes[u].id +
                               " (t=0): outgoing capacity " + fmt(out) + " > capital " +
                               fmt(net.nodes[u].capital0));
      }
    }
  }
  return rep;
}

ValidationReport validate_transactions(const Network& net, const TransactionSet& txns) {
  ValidationReport rep;
  const NetworkIndex idx = NetworkIndex::build(net);
  for (std::size_t i = 0; i < txns.size(); ++i) {
    const Transaction& t = txns[i];
    const std::string tag = "transaction at position " + std::to_string(i);
    if (t.time != static_cast<int>(i) + 1) {
      rep.problems.push_back(tag + ": time " + std::to_string(t.time) + " breaks the 1..n" +
                             " one-per-step sequence");
    }
    if (t.value <= 0.0) rep.problems.push_back(tag + ": non-positive value");
    if (!idx.node_by_id.count(t.source)) rep.problems.push_back(tag + ": unknown source " + t.source);
    if (!idx.node_by_id.count(t.dest)) rep.problems.push_back(tag + ": unknown dest " + t.dest);
    if (t.path.empty()) {
      rep.problems.push_back(tag + ": empty path");
      continue;
    }
    std::string cur = t.source;
    bool broken = false;
    for (const Hop& h : t.path) {
      auto it = idx.channel_by_id.find(h.channel);
      if (it == idx.channel_by_id.end()) {
        rep.problems.push_back(tag + ": unknown channel " + h.channel);
        broken = true;
        break;
      }
      const Channel& ch = net.channels[it->second];
      const std::string& tail = h.forward ? ch.source : ch.target;
      const std::string& head = h.forward ? ch.target : ch.source;
      if (tail != cur) {
        rep.problems.push_back(tag + ": path breaks at channel " + h.channel + " (expected tail " +
                               cur + ", got " + tail + ")");
        broken = true;
        break;
      }
      cur = head;
    }
    if (!broken && cur != t.dest) {
      rep.problems.push_back(tag + ": path ends at " + cur + ", not dest " + t.dest);
    }
  }
  return rep;
}

ValidationReport validate_schedule(const Network& net, const Schedule& sched, int horizon) {
  ValidationReport rep;
  const NetworkIndex idx = NetworkIndex::build(net);
  for (const auto& [channel, mods] : sched) {
    if (!idx.channel_by_id.count(channel)) {
      rep.problems.push_back("schedule references unknown channel " + channel);
    }
    int prev = 0;
    for (const ModEntry& m : mods) {
      if (m.time <= prev) {
        rep.problems.push_back("schedule times not strictly increasing on channel " + channel);
      }
      if (m.time < 1 || m.time > horizon) {
        rep.problems.push_back("schedule time " + std::to_string(m.time) + " out of 1.." +
                               std::to_string(horizon) + " on channel " + channel);
      }
      if (m.value < 0.0) rep.problems.push_back("negative schedule value on channel " + channel);
      prev = m.time;
    }
  }
  return rep;
}

}  // namespace pcn::core
