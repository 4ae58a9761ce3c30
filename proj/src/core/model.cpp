#include "pcn/core/model.hpp"

#include <stdexcept>

namespace pcn::core {

NetworkIndex NetworkIndex::build(const Network& net) {
  NetworkIndex idx;
  idx.node_by_id.reserve(net.nodes.size());
  for (std::size_t i = 0; i < net.nodes.size(); ++i) idx.node_by_id.emplace(net.nodes[i].id, i);
  idx.channel_by_id.reserve(net.channels.size());
  idx.outgoing.resize(net.nodes.size());
  for (std::size_t i = 0; i < net.channels.size(); ++i) {
    const Channel& ch = net.channels[i];
    idx.channel_by_id.emplace(ch.id, i);
    auto it = idx.node_by_id.find(ch.source);
    if (it != idx.node_by_id.end()) idx.outgoing[it->second].push_back(i);
  }
  return idx;
}

const char* mode_name(Mode m) { return m == Mode::Consuming ? "consuming" : "non-consuming"; }

double Trace::capacity_at(const std::string& channel, int t) const {
  for (std::size_t i = 0; i < channel_ids.size(); ++i) {
    if (channel_ids[i] == channel) {
      if (t < 0 || static_cast<std::size_t>(t) >= capacity[i].size()) {
        throw std::invalid_argument("trace: time out of range: " + std::to_string(t));
      }
      return capacity[i][static_cast<std::size_t>(t)];
    }
  }
  throw std::invalid_argument("trace: unknown channel: " + channel);
}

double Trace::capital_of(const std::string& node, int t) const {
  for (std::size_t i = 0; i < node_ids.size(); ++i) {
    if (node_ids[i] == node) {
      if (t < 0 || static_cast<std::size_t>(t) >= capital[i].size()) {
        throw std::invalid_argument("trace: time out of range: " + std::to_string(t));
      }
      return capital[i][static_cast<std::size_t>(t)];
    }
  }
  throw std::invalid_argument("trace: unknown node: " + node);
}

}  // namespace pcn::core
