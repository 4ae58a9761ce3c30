#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pcn/core/io.hpp"
#include "pcn/lp/lp.hpp"

namespace pcn::lp {

namespace {
constexpr double kDeltaTol = 1e-7;
}

core::Schedule extract_schedule_restricted(const core::Network& net,
                                           const core::TransactionSet& txns,
                                           const std::vector<ModSlot>& slots,
                                           const LpSolution& sol) {
  if (sol.status != LpStatus::Optimal) {
    throw std::invalid_argument("extract_schedule: solution is not optimal");
  }
  const std::size_t E = net.channels.size();
  const std::size_t n = txns.size();
  const std::size_t cvars = E * n;
  if (sol.x.size() != cvars + 2 * slots.size()) {
    throw std::invalid_argument("extract_schedule: solution does not match the problem layout");
  }
  core::Schedule sched;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const double delta = sol.x[cvars + 2 * s] - sol.x[cvars + 2 * s + 1];
    if (std::abs(delta) > kDeltaTol) {
      const ModSlot& slot = slots[s];
      const double lambda =
          sol.x[slot.channel * n + static_cast<std::size_t>(slot.time - 1)];
      sched[net.channels[slot.channel].id].push_back({slot.time, lambda});
    }
  }
  // Slot order is channel-major then time, so per-channel lists are already
  // time-sorted for build_lp's layout; restricted slot lists may not be.
  for (auto& [channel, entries] : sched) {
    std::sort(entries.begin(), entries.end(),
              [](const core::ModEntry& a, const core::ModEntry& b) { return a.time < b.time; });
    (void)channel;
  }
  return sched;
}

core::Schedule extract_schedule(const core::Network& net, const core::TransactionSet& txns,
                                const LpSolution& sol) {
  std::vector<ModSlot> slots;
  const int n = static_cast<int>(txns.size());
  slots.reserve(net.channels.size() * txns.size());
  for (std::size_t e = 0; e < net.channels.size(); ++e) {
    for (int t = 1; t <= n; ++t) slots.push_back({e, t});
  }
  return extract_schedule_restricted(net, txns, slots, sol);
}

std::string dump_lp(const LpProblem& p) {
  std::ostringstream out;
  out << "min:";
  bool any = false;
  for (std::size_t j = 0; j < p.vars.size(); ++j) {
    if (p.objective[j] != 0.0) {
      out << (any ? " + " : " ") << core::double_str(p.objective[j]) << "*" << p.vars[j];
      any = true;
    }
  }
  if (!any) out << " 0";
  out << "\n";
  for (const LpRow& r : p.rows) {
    out << r.name << ":";
    for (std::size_t k = 0; k < r.coefs.size(); ++k) {
      const auto& [var, coef] = r.coefs[k];
      if (k > 0) out << " +";
      out << " " << core::double_str(coef) << "*" << p.vars[var];
    }
    out << (r.rel == Rel::Eq ? " = " : r.rel == Rel::Le ? " <= " : " >= ")
        << core::double_str(r.rhs) << "\n";
  }
  return out.str();
}

}  // namespace pcn::lp
