#include <map>
#include <stdexcept>

#include "pcn/core/simulate.hpp"
#include "pcn/core/validate.hpp"
#include "pcn/lp/lp.hpp"

namespace pcn::lp {

using core::Mode;
using core::Network;
using core::TransactionSet;

namespace {

std::string bracket(const std::string& id, int t) { return "[" + id + "][" + std::to_string(t) + "]"; }

// Net amount the step-t transaction removes from channel e when it executes:
// value per forward traversal, minus value per reverse traversal. Zero in
// non-consuming mode (flow never touches capacities there).
double flow_of(const Network& net, const core::Transaction& tx, std::size_t e,
               const core::NetworkIndex& idx) {
  if (net.mode == Mode::NonConsuming) return 0.0;
  double f = 0.0;
  for (const core::Hop& h : tx.path) {
    if (idx.channel_by_id.at(h.channel) != e) continue;
    f += h.forward ? tx.value : -tx.value;
  }
  return f;
}

LpProblem build(const Network& net, const TransactionSet& txns,
                const std::vector<ModSlot>& slots) {
  {
    core::ValidationReport rep = core::validate_network(net);
    if (!rep.ok()) throw std::invalid_argument("build_lp: invalid network: " + rep.problems.front());
    rep = core::validate_transactions(net, txns);
    if (!rep.ok()) {
      throw std::invalid_argument("build_lp: invalid transactions: " + rep.problems.front());
    }
  }
  const core::NetworkIndex idx = core::NetworkIndex::build(net);
  const int n = static_cast<int>(txns.size());
  const std::size_t E = net.channels.size();

  LpProblem p;
  // c[e][t] variables first, slot deltas after; both orders deterministic.
  auto cvar = [&](std::size_t e, int t) {
    return e * static_cast<std::size_t>(n) + static_cast<std::size_t>(t - 1);
  };
  for (std::size_t e = 0; e < E; ++e) {
    for (int t = 1; t <= n; ++t) p.vars.push_back("c" + bracket(net.channels[e].id, t));
  }
  // slot_at[e][t-1] = index into slots, or npos.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> slot_at(E, std::vector<std::size_t>(
                                                       static_cast<std::size_t>(n), npos));
  std::vector<std::size_t> dplus_var(slots.size()), dminus_var(slots.size());
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const ModSlot& slot = slots[s];
    if (slot.channel >= E || slot.time < 1 || slot.time > n) {
      throw std::invalid_argument("build_lp: slot out of range");
    }
    std::size_t& cell = slot_at[slot.channel][static_cast<std::size_t>(slot.time - 1)];
    if (cell != npos) throw std::invalid_argument("build_lp: duplicate slot");
    cell = s;
    const std::string suffix = bracket(net.channels[slot.channel].id, slot.time);
    dplus_var[s] = p.vars.size();
    p.vars.push_back("dplus" + suffix);
    dminus_var[s] = p.vars.size();
    p.vars.push_back("dminus" + suffix);
  }
  p.objective.assign(p.vars.size(), 0.0);
  for (std::size_t s = 0; s < slots.size(); ++s) {
    p.objective[dplus_var[s]] = 1.0;
    p.objective[dminus_var[s]] = 1.0;
  }

  // Flow balance: c[e][t] - dplus + dminus = previous post-flow capacity.
  for (std::size_t e = 0; e < E; ++e) {
    for (int t = 1; t <= n; ++t) {
      LpRow row;
      row.name = "balance" + bracket(net.channels[e].id, t);
      row.rel = Rel::Eq;
      row.coefs.emplace_back(cvar(e, t), 1.0);
      const std::size_t s = slot_at[e][static_cast<std::size_t>(t - 1)];
      if (s != npos) {
        row.coefs.emplace_back(dplus_var[s], -1.0);
        row.coefs.emplace_back(dminus_var[s], 1.0);
      }
      if (t == 1) {
        row.rhs = net.channels[e].capacity0;
      } else {
        row.coefs.emplace_back(cvar(e, t - 1), -1.0);
        row.rhs = -flow_of(net, txns[static_cast<std::size_t>(t - 2)], e, idx);
      }
      p.rows.push_back(std::move(row));
    }
  }

  // Routing: every forward hop of the step-t path must carry v_t.
  for (int t = 1; t <= n; ++t) {
    const core::Transaction& tx = txns[static_cast<std::size_t>(t - 1)];
    std::map<std::size_t, bool> seen;  // dedupe repeated hops, keep channel order stable
    for (const core::Hop& h : tx.path) {
      if (!h.forward) continue;
      const std::size_t e = idx.channel_by_id.at(h.channel);
      if (seen.emplace(e, true).second) {
        LpRow row;
        row.name = "route" + bracket(net.channels[e].id, t);
        row.rel = Rel::Ge;
        row.coefs.emplace_back(cvar(e, t), 1.0);
        row.rhs = tx.value;
        p.rows.push_back(std::move(row));
      }
    }
  }

  // Capital: outgoing capacities of u at step t are backed by the capital
  // entering the step (flows of steps 1..t-1 applied).
  for (int t = 1; t <= n; ++t) {
    for (std::size_t u = 0; u < net.nodes.size(); ++u) {
      if (idx.outgoing[u].empty()) continue;
      LpRow row;
      row.name = "cap" + bracket(net.nodes[u].id, t);
      row.rel = Rel::Le;
      for (std::size_t e : idx.outgoing[u]) row.coefs.emplace_back(cvar(e, t), 1.0);
      row.rhs = core::capital_at(net, txns, net.nodes[u].id, t - 1);
      p.rows.push_back(std::move(row));
    }
  }
  return p;
}

std::vector<ModSlot> all_slots(const Network& net, const TransactionSet& txns) {
  std::vector<ModSlot> slots;
  const int n = static_cast<int>(txns.size());
  slots.reserve(net.channels.size() * static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < net.channels.size(); ++e) {
    for (int t = 1; t <= n; ++t) slots.push_back({e, t});
  }
  return slots;
}

}  // namespace

LpProblem build_lp(const Network& net, const TransactionSet& txns) {
  return build(net, txns, all_slots(net, txns));
}

LpProblem build_lp_restricted(const Network& net, const TransactionSet& txns,
                              const std::vector<ModSlot>& slots) {
  return build(net, txns, slots);
}

}  // namespace pcn::lp
