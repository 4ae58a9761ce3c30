#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "pcn/core/simulate.hpp"
#include "pcn/core/validate.hpp"
#include "pcn/heur/heur.hpp"

namespace pcn::heur {

using core::kTol;

CoeffArray::CoeffArray(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("coefficient outside [0,1]");
    }
  }
}

DecodeResult decode(const core::Network& net, const core::TransactionSet& txns,
                    const CoeffArray& arr, const core::PenaltyConfig& pen) {
  {
    core::ValidationReport rep = core::validate_network(net);
    if (!rep.ok()) throw std::invalid_argument("decode: invalid network: " + rep.problems.front());
    rep = core::validate_transactions(net, txns);
    if (!rep.ok()) {
      throw std::invalid_argument("decode: invalid transactions: " + rep.problems.front());
    }
  }
  const core::NetworkIndex idx = core::NetworkIndex::build(net);
  const bool consuming = net.mode == core::Mode::Consuming;

  std::size_t cursor = 0;
  auto next_coeff = [&]() { return cursor < arr.size() ? arr.values()[cursor++] : 0.0; };

  std::vector<double> cap(net.channels.size());
  for (std::size_t e = 0; e < cap.size(); ++e) cap[e] = net.channels[e].capacity0;
  std::vector<double> capital(net.nodes.size());
  for (std::size_t u = 0; u < capital.size(); ++u) capital[u] = net.nodes[u].capital0;

  auto headroom_of = [&](std::size_t u) {
    double out = 0.0;
    for (std::size_t e : idx.outgoing[u]) out += cap[e];
    return capital[u] - out;
  };

  core::Schedule sched;
  int skips = 0;

  for (const core::Transaction& tx : txns) {
    const int i = tx.time;
    // Capacity each channel had when the step began; both the rollback and
    // the one-entry-per-channel coalescing need it.
    std::map<std::size_t, double> before;  // channel -> capacity at step start
    auto modify = [&](std::size_t e, double lambda) {
      before.emplace(e, cap[e]);
      cap[e] = lambda;
    };

    bool ok = true;
    for (const core::Hop& h : tx.path) {
      if (!h.forward) continue;
      const std::size_t e = idx.channel_by_id.at(h.channel);
      if (cap[e] >= tx.value - kTol) continue;  // already carries the value

      const std::size_t u = idx.node_by_id.at(net.channels[e].source);
      double need = tx.value - cap[e];
      if (headroom_of(u) < need - kTol) {
        // Free headroom by shrinking the tail's other channels, biggest
        // first, until the raise fits.
        std::vector<std::size_t> sibs;
        for (std::size_t s : idx.outgoing[u]) {
          if (s != e && cap[s] > kTol) sibs.push_back(s);
        }
        std::sort(sibs.begin(), sibs.end(), [&](std::size_t a, std::size_t b) {
          if (cap[a] != cap[b]) return cap[a] > cap[b];
          return net.channels[a].id < net.channels[b].id;
        });
        for (std::size_t s : sibs) {
          modify(s, next_coeff() * cap[s]);
          if (headroom_of(u) >= need - kTol) break;
        }
      }
      const double headroom = headroom_of(u);
      need = tx.value - cap[e];
      if (headroom >= need - kTol) {
        const double slack = std::max(headroom - need, 0.0);
        modify(e, tx.value + next_coeff() * slack);
      } else {
        ok = false;  // unroutable: roll this transaction's work back
        break;
      }
    }
    if (ok) {
      // A later hop's shrink may have undercut an earlier raise; the
      // transaction only executes if the whole path still clears.
      for (const core::Hop& h : tx.path) {
        if (h.forward && cap[idx.channel_by_id.at(h.channel)] < tx.value - kTol) {
          ok = false;
          break;
        }
      }
    }

    if (!ok) {
      for (const auto& [e, old] : before) cap[e] = old;
      // With the tentative work undone the path may clear after all (a
      // shrink that broke it is gone); replay sees exactly this state, so
      // decide exactly as it would.
      ok = true;
      for (const core::Hop& h : tx.path) {
        if (h.forward && cap[idx.channel_by_id.at(h.channel)] < tx.value - kTol) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        ++skips;
        continue;
      }
      before.clear();
    }
    for (const auto& [e, old] : before) {
      (void)old;
      sched[net.channels[e].id].push_back({i, cap[e]});
    }
    if (consuming) {
      for (const core::Hop& h : tx.path) {
        const std::size_t e = idx.channel_by_id.at(h.channel);
        cap[e] += h.forward ? -tx.value : tx.value;
      }
      capital[idx.node_by_id.at(tx.source)] -= tx.value;
      capital[idx.node_by_id.at(tx.dest)] += tx.value;
    }
  }

  DecodeResult out;
  out.schedule = std::move(sched);
  out.trace = core::simulate(net, txns, out.schedule, pen);
  out.fitness.sc = core::step_cost(out.schedule);
  out.fitness.skips = skips;
  out.fitness.value = out.fitness.sc + pen.penalty_per_skip * skips;
  if (out.trace.sc != out.fitness.sc ||
      static_cast<int>(out.trace.skipped.size()) != skips) {
    throw std::logic_error("decode: replay disagrees with the decoder's own bookkeeping");
  }
  return out;
}

}  // namespace pcn::heur
