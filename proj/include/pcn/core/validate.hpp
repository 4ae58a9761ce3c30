#pragma once

#include <string>
#include <vector>

#include "pcn/core/model.hpp"

namespace pcn::core {

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Structural checks on the network itself: id uniqueness, endpoint existence,
// nonnegative amounts, self-loops, and the t=0 capital constraint
// (sum of outgoing capacities <= capital at every node).
ValidationReport validate_network(const Network& net);

// Checks a transaction sequence against a (structurally valid) network:
// times must be exactly 1..n, values positive, paths node-contiguous from
// source to dest with every hop channel present.
ValidationReport validate_transactions(const Network& net, const TransactionSet& txns);

// Checks a schedule: known channels, times within 1..horizon and strictly
// increasing per channel, values >= 0.
ValidationReport validate_schedule(const Network& net, const Schedule& sched, int horizon);

}  // namespace pcn::core
