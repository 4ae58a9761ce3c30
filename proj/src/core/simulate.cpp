#include "pcn/core/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "pcn/core/validate.hpp"

namespace pcn::core {

double capital_at(const Network& net, const TransactionSet& txns, const std::string& u, int t) {
  const Node* node = nullptr;
  for (const Node& nd : net.nodes) {
    if (nd.id == u) {
      node = &nd;
      break;
    }
  }
  if (!node) throw std::invalid_argument("capital_at: unknown node " + u);
  double c = node->capital0;
  if (net.mode == Mode::NonConsuming) return c;
  for (const Transaction& tx : txns) {
    if (tx.time > t) break;
    if (tx.source == u) c -= tx.value;
    if (tx.dest == u) c += tx.value;
  }
  return c;
}

Trace simulate(const Network& net, const TransactionSet& txns, const Schedule& sched,
               const PenaltyConfig& /*pen: applied by fitness consumers*/) {
  {
    ValidationReport net_rep = validate_network(net);
    if (!net_rep.ok()) {
      throw std::invalid_argument("simulate: invalid network: " + net_rep.problems.front());
    }
    ValidationReport txn_rep = validate_transactions(net, txns);
    if (!txn_rep.ok()) {
      throw std::invalid_argument("simulate: invalid transactions: " + txn_rep.problems.front());
    }
    ValidationReport sch_rep = validate_schedule(net, sched, static_cast<int>(txns.size()));
    if (!sch_rep.ok()) {
      throw std::invalid_argument("simulate: invalid schedule: " + sch_rep.problems.front());
    }
  }

  const NetworkIndex idx = NetworkIndex::build(net);
  const int n = static_cast<int>(txns.size());
  const bool consuming = net.mode == Mode::Consuming;

  Trace tr;
  tr.channel_ids.reserve(net.channels.size());
  for (const Channel& ch : net.channels) tr.channel_ids.push_back(ch.id);
  tr.node_ids.reserve(net.nodes.size());
  for (const Node& nd : net.nodes) tr.node_ids.push_back(nd.id);

  std::vector<double> cap(net.channels.size());
  for (std::size_t e = 0; e < net.channels.size(); ++e) cap[e] = net.channels[e].capacity0;
  std::vector<double> capital(net.nodes.size());
  for (std::size_t u = 0; u < net.nodes.size(); ++u) capital[u] = net.nodes[u].capital0;

  tr.capacity.assign(net.channels.size(), std::vector<double>(static_cast<std::size_t>(n) + 1));
  tr.capital.assign(net.nodes.size(), std::vector<double>(static_cast<std::size_t>(n) + 1));
  for (std::size_t e = 0; e < cap.size(); ++e) tr.capacity[e][0] = cap[e];
  for (std::size_t u = 0; u < capital.size(); ++u) tr.capital[u][0] = capital[u];

  // Per-channel cursor into its (time-sorted) modification list.
  std::vector<std::pair<std::size_t, const std::vector<ModEntry>*>> mods;
  for (const auto& [channel, entries] : sched) {
    mods.emplace_back(idx.channel_by_id.at(channel), &entries);
  }
  std::vector<std::size_t> cursor(mods.size(), 0);

  for (int i = 1; i <= n; ++i) {
    const Transaction& tx = txns[static_cast<std::size_t>(i - 1)];

    // (1) Modifications scheduled for this step, channel order deterministic.
    for (std::size_t m = 0; m < mods.size(); ++m) {
      const auto& [e, entries] = mods[m];
      while (cursor[m] < entries->size() && (*entries)[cursor[m]].time == i) {
        const double lambda = (*entries)[cursor[m]].value;
        tr.lc += std::abs(lambda - cap[e]);
        tr.sc += 1;
        cap[e] = lambda;
        ++cursor[m];
      }
    }

    // (2) Capital constraint against the capital entering this step.
    for (std::size_t u = 0; u < net.nodes.size(); ++u) {
      double out = 0.0;
      for (std::size_t e : idx.outgoing[u]) out += cap[e];
      if (out > capital[u] + kTol) {
        tr.violations.push_back({"capital", net.nodes[u].id, i});
      }
    }

    // (3) Feasibility over the forward hops, then flow (consuming mode only).
    bool feasible = true;
    for (const Hop& h : tx.path) {
      if (h.forward && cap[idx.channel_by_id.at(h.channel)] < tx.value - kTol) {
        feasible = false;
        break;
      }
    }
    if (feasible) {
      tr.executed.push_back(i);
      if (consuming) {
        for (const Hop& h : tx.path) {
          const std::size_t e = idx.channel_by_id.at(h.channel);
          if (h.forward) {
            cap[e] -= tx.value;
          } else {
            cap[e] += tx.value;
          }
        }
        capital[idx.node_by_id.at(tx.source)] -= tx.value;
        capital[idx.node_by_id.at(tx.dest)] += tx.value;
      }
    } else {
      tr.skipped.push_back(i);
    }

    for (std::size_t e = 0; e < cap.size(); ++e) tr.capacity[e][static_cast<std::size_t>(i)] = cap[e];
    for (std::size_t u = 0; u < capital.size(); ++u) {
      tr.capital[u][static_cast<std::size_t>(i)] = capital[u];
    }
  }
  return tr;
}

double linear_cost(const Schedule& sched, const Trace& trace) {
  double total = 0.0;
  for (const auto& [channel, entries] : sched) {
    std::size_t row = trace.channel_ids.size();
    for (std::size_t i = 0; i < trace.channel_ids.size(); ++i) {
      if (trace.channel_ids[i] == channel) {
        row = i;
        break;
      }
    }
    if (row == trace.channel_ids.size()) {
      throw std::invalid_argument("linear_cost: channel not in trace: " + channel);
    }
    for (const ModEntry& m : entries) {
      if (m.time < 1 || static_cast<std::size_t>(m.time) >= trace.capacity[row].size()) {
        throw std::invalid_argument("linear_cost: modification time outside trace horizon");
      }
      // Capacity immediately before the step-m.time modification is the
      // post-step value of the previous step.
      total += std::abs(m.value - trace.capacity[row][static_cast<std::size_t>(m.time - 1)]);
    }
  }
  if (std::abs(total - trace.lc) > 1e-6) {
    throw std::invalid_argument("linear_cost: schedule does not match trace (recomputed " +
                                std::to_string(total) + ", trace " + std::to_string(trace.lc) +
                                ")");
  }
  return total;
}

int step_cost(const Schedule& sched) {
  int k = 0;
  for (const auto& [channel, entries] : sched) {
    (void)channel;
    k += static_cast<int>(entries.size());
  }
  return k;
}

}  // namespace pcn::core
