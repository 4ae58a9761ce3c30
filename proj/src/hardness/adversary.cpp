#include <algorithm>
#include <set>
#include <stdexcept>

#include "pcn/core/io.hpp"
#include "pcn/core/simulate.hpp"
#include "pcn/hardness/adversary.hpp"

namespace pcn::hardness {

using core::kTol;

std::vector<ModRequest> greedy_online(const OnlineView& view) {
  const core::NetworkIndex idx = core::NetworkIndex::build(view.net);
  std::map<std::string, double> cap = view.capacity;  // working copy
  std::map<std::string, double> plan;                 // channel -> target value

  // Channels the payment itself rides on must not be raided for headroom.
  std::set<std::string> path_channels;
  for (const core::Hop& h : view.next.path) {
    if (h.forward) path_channels.insert(h.channel);
  }

  const double v = view.next.value;
  for (const core::Hop& h : view.next.path) {
    if (!h.forward) continue;
    const double have = cap.at(h.channel);
    if (have >= v - kTol) continue;
    const core::Channel& ch = view.net.channels[idx.channel_by_id.at(h.channel)];
    const std::size_t u = idx.node_by_id.at(ch.source);
    double out_sum = 0.0;
    double sib_total = 0.0;
    for (std::size_t e : idx.outgoing[u]) {
      const double c = cap.at(view.net.channels[e].id);
      out_sum += c;
      if (!path_channels.count(view.net.channels[e].id)) sib_total += c;
    }
    const double need = v - have;
    const double headroom = view.capital.at(ch.source) - out_sum;
    if (headroom < need - kTol) {
      const double shortfall = need - headroom;
      if (sib_total < shortfall - kTol) return {};  // nothing to free: give up
      const double keep = sib_total > 0.0 ? std::max(0.0, 1.0 - shortfall / sib_total) : 0.0;
      for (std::size_t e : idx.outgoing[u]) {
        const std::string& id = view.net.channels[e].id;
        if (path_channels.count(id) || cap.at(id) <= 0.0) continue;
        const double lowered = cap.at(id) * keep;
        plan[id] = lowered;
        cap[id] = lowered;
      }
    }
    plan[h.channel] = v;
    cap[h.channel] = v;
  }

  std::vector<ModRequest> out;
  for (const auto& [channel, value] : plan) out.push_back({channel, value});
  return out;
}

AdversaryReport adversary_run(const OnlineAlgorithm& alg, const AdversaryConfig& cfg) {
  if (cfg.delta == 0) throw std::invalid_argument("adversary needs at least one channel");
  if (cfg.steps == 0) throw std::invalid_argument("adversary needs at least one step");
  if (!(cfg.capital > 0.0)) throw std::invalid_argument("payer capital must be positive");
  const double eps =
      cfg.epsilon > 0.0 ? cfg.epsilon : cfg.capital / (100.0 * static_cast<double>(cfg.delta));
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
  // Requests push total capacity up by eps per step; past the payer's
  // capital no player could stay legal, so refuse such configs up front.
  if (cfg.mode == core::Mode::NonConsuming &&
      static_cast<double>(cfg.steps) * eps > cfg.capital + kTol) {
    throw std::invalid_argument("steps * epsilon exceeds the payer's capital");
  }

  AdversaryReport rep;
  rep.net.mode = cfg.mode;
  rep.net.nodes = {{"v1", cfg.capital}, {"v2", 0.0}};
  for (std::size_t i = 0; i < cfg.delta; ++i) {
    rep.net.channels.push_back({"e" + std::to_string(i + 1), "v1", "v2", 0.0});
  }

  std::map<std::string, double> cap;
  for (const core::Channel& ch : rep.net.channels) cap[ch.id] = 0.0;
  std::map<std::string, double> capital{{"v1", cfg.capital}, {"v2", 0.0}};

  // Per-channel request history, for the offline construction below:
  // first request step, largest value, and the sum of all values.
  struct History {
    int first = 0;
    double max_value = 0.0;
    double total = 0.0;
  };
  std::map<std::string, History> requested;

  for (std::size_t step = 1; step <= cfg.steps; ++step) {
    const int t = static_cast<int>(step);
    std::size_t pick = 0;
    for (std::size_t i = 1; i < rep.net.channels.size(); ++i) {
      if (cap.at(rep.net.channels[i].id) < cap.at(rep.net.channels[pick].id) - kTol) pick = i;
    }
    const std::string& ce = rep.net.channels[pick].id;
    const double value = cap.at(ce) + eps;
    core::Transaction tx{t, "v1", "v2", {{ce, true}}, value};

    const std::vector<ModRequest> mods = alg(OnlineView{rep.net, cap, capital, tx});

    std::set<std::string> touched;
    nlohmann::json jmods = nlohmann::json::array();
    for (const ModRequest& m : mods) {
      if (!cap.count(m.channel)) {
        throw std::invalid_argument("online player modified unknown channel " + m.channel);
      }
      if (!(m.value >= 0.0)) {
        throw std::invalid_argument("online player set a negative capacity on " + m.channel);
      }
      if (!touched.insert(m.channel).second) {
        throw std::invalid_argument("online player touched " + m.channel + " twice in one step");
      }
      rep.online_schedule[m.channel].push_back({t, m.value});
      cap[m.channel] = m.value;
      ++rep.online_sc;
      jmods.push_back({{"channel", m.channel}, {"value", m.value}});
    }

    bool legal = true;
    for (const core::Node& u : rep.net.nodes) {
      double out_sum = 0.0;
      for (const core::Channel& ch : rep.net.channels) {
        if (ch.source == u.id) out_sum += cap.at(ch.id);
      }
      if (out_sum > capital.at(u.id) + kTol) legal = false;
    }

    const bool executed = legal && cap.at(ce) >= value - kTol;
    if (executed && cfg.mode == core::Mode::Consuming) {
      cap[ce] -= value;
      capital["v1"] -= value;
      capital["v2"] += value;
    }

    rep.txns.push_back(tx);
    History& h = requested[ce];
    if (h.first == 0) h.first = t;
    h.max_value = std::max(h.max_value, value);
    h.total += value;

    rep.transcript += nlohmann::json{{"step", t},
                                     {"channel", ce},
                                     {"value", value},
                                     {"mods", jmods},
                                     {"executed", executed}}
                          .dump();
    rep.transcript += '\n';

    if (!legal) {
      rep.disqualified = true;
      rep.disqualified_step = step;
      break;
    }
  }

  if (!rep.disqualified) {
    // Cross-check the bookkeeping above against a full replay.
    const core::Trace replay = core::simulate(rep.net, rep.txns, rep.online_schedule);
    if (!replay.violations.empty()) throw std::logic_error("online replay hit violations");
    if (replay.sc != static_cast<int>(rep.online_sc)) {
      throw std::logic_error("online step-cost bookkeeping disagrees with replay");
    }
  }

  // Offline: one raise per requested channel at its first request. With flow
  // not consuming capacity the horizon maximum covers every later request;
  // with consumption each serviced request drains the channel, so provision
  // the sum instead. Replay decides whether the attempt stands.
  core::Schedule offline;
  for (const auto& [channel, h] : requested) {
    const double target = cfg.mode == core::Mode::Consuming ? h.total : h.max_value;
    offline[channel].push_back({h.first, target});
  }
  bool offline_ok = !rep.disqualified;
  if (offline_ok) {
    const core::Trace replay = core::simulate(rep.net, rep.txns, offline);
    offline_ok = replay.violations.empty() && replay.skipped.empty();
  }
  if (offline_ok) {
    rep.offline_schedule = offline;
  } else {
    rep.offline_schedule = rep.online_schedule;  // always a feasible witness
  }
  rep.offline_sc = 0;
  for (const auto& [channel, mods] : rep.offline_schedule) {
    (void)channel;
    rep.offline_sc += mods.size();
  }
  rep.ratio = rep.offline_sc == 0
                  ? 0.0
                  : static_cast<double>(rep.online_sc) / static_cast<double>(rep.offline_sc);
  return rep;
}

}  // namespace pcn::hardness
