#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pcn/core/model.hpp"

namespace pcn::hardness {

// A capacity reset an online player wants applied before the pending
// transaction runs; the harness stamps it with the current step.
struct ModRequest {
  std::string channel;
  double value = 0.0;
};

// Everything the player may look at: the static network, the live
// capacities and capitals, and only the next transaction. Nothing about
// future requests leaks through here.
struct OnlineView {
  const core::Network& net;
  const std::map<std::string, double>& capacity;
  const std::map<std::string, double>& capital;
  const core::Transaction& next;
};

// Players may keep state between steps (capture it in the callable).
using OnlineAlgorithm = std::function<std::vector<ModRequest>(const OnlineView&)>;

// Baseline player: raises each short forward hop to exactly the payment
// value, first shrinking the tail node's other outgoing channels
// proportionally when headroom is short. Makes no anticipatory changes.
// Returns no requests when no modification set can route the transaction
// (the harness then records a skip).
std::vector<ModRequest> greedy_online(const OnlineView& view);

struct AdversaryConfig {
  std::size_t delta = 2;   // parallel channels between the two nodes
  std::size_t steps = 60;  // number of requests issued
  double capital = 1.0;    // payer's capital C0
  double epsilon = 0.0;    // request increment; 0 picks capital / (100 * delta)
  // Consuming mode is available for experimentation; the offline
  // construction is then only a verified attempt (see adversary_run).
  core::Mode mode = core::Mode::NonConsuming;
};

struct AdversaryReport {
  core::Network net;
  core::TransactionSet txns;
  core::Schedule online_schedule;
  core::Schedule offline_schedule;
  std::size_t online_sc = 0;
  std::size_t offline_sc = 0;
  double ratio = 0.0;      // online_sc / offline_sc
  std::string transcript;  // one JSON object per line, one line per step
  // Set when the player's requests broke the capital constraint; the run
  // stops at that step and the partial transcript is kept.
  bool disqualified = false;
  std::size_t disqualified_step = 0;
};

// Plays a request sequence no online player can service cheaply: two nodes,
// `delta` parallel channels starting empty, and each step a payment over the
// currently smallest channel (ties to the lowest index) for slightly more
// than it holds. Whatever the player does, that channel must change, so an
// online schedule pays one modification per step; knowing the sequence in
// advance, one raise per channel covers everything. The offline schedule is
// never trusted: it is replayed, and if it fails (possible in consuming
// mode) the online schedule stands in as the witness.
// Throws std::invalid_argument for malformed requests (unknown channel,
// negative value, same channel twice in a step) or an invalid config.
AdversaryReport adversary_run(const OnlineAlgorithm& alg, const AdversaryConfig& cfg);

}  // namespace pcn::hardness
