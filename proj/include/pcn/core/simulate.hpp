#pragma once

#include "pcn/core/model.hpp"

namespace pcn::core {

// Capital of node u after step t, per the closed form: initial capital minus
// everything u sent up to t plus everything u received up to t. Independent
// of any schedule and of whether transactions actually routed; in
// non-consuming mode capital never moves, so this returns capital0.
// Throws std::invalid_argument on an unknown node id.
double capital_at(const Network& net, const TransactionSet& txns, const std::string& u, int t);

// Deterministic replay of a schedule against a transaction sequence.
// Per step i: (1) apply every modification with time == i (lc accumulates
// |new - old|, sc counts entries); (2) check sum of outgoing capacities
// against each node's live capital (a breach is recorded as a violation,
// never an abort); (3) if every forward hop of the step's path has capacity
// >= value - tolerance, the transaction executes, otherwise it is skipped.
// In consuming mode execution debits forward channels / the source's capital
// and credits reverse channels / the destination's capital; in non-consuming
// mode execution changes nothing.
// The penalty config is accepted so call sites can thread one end-to-end;
// penalties are applied by fitness consumers, not here.
// Throws std::invalid_argument on malformed inputs (unknown ids, broken
// paths, out-of-order schedule times, negative lambdas).
Trace simulate(const Network& net, const TransactionSet& txns, const Schedule& sched,
               const PenaltyConfig& pen = {});

// Recomputes the linear cost of `sched` from the trace's capacity tables
// (sum over modifications of |lambda - capacity just before it applies|)
// and cross-checks it against trace.lc. Throws std::invalid_argument when
// the schedule does not match the trace.
double linear_cost(const Schedule& sched, const Trace& trace);

// Total number of stored modifications.
int step_cost(const Schedule& sched);

}  // namespace pcn::core
