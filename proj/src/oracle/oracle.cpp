#include "pcn/oracle/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "pcn/core/simulate.hpp"
#include "pcn/core/validate.hpp"
#include "pcn/lp/lp.hpp"

namespace pcn::oracle {

using core::kTol;
using core::Mode;
using core::Network;
using core::Schedule;
using core::TransactionSet;

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
  Clock::time_point end;
  explicit Deadline(double seconds)
      : end(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(seconds))) {}
  bool passed() const { return Clock::now() > end; }
};

void require_valid(const Network& net, const TransactionSet& txns, const char* who) {
  core::ValidationReport rep = core::validate_network(net);
  if (!rep.ok()) {
    throw std::invalid_argument(std::string(who) + ": invalid network: " + rep.problems.front());
  }
  rep = core::validate_transactions(net, txns);
  if (!rep.ok()) {
    throw std::invalid_argument(std::string(who) +
                                ": invalid transactions: " + rep.problems.front());
  }
}

// Modification slots a channel provably requires: before a channel's first
// traversal its capacity can only move via modifications (in either mode),
// so a first-use forward hop whose value exceeds capacity0 forces a
// modification at or before that step. Sound in both modes; prunes most of
// the support lattice.
std::vector<int> first_touch_needs(const Network& net, const TransactionSet& txns) {
  const core::NetworkIndex idx = core::NetworkIndex::build(net);
  std::vector<int> need_by(net.channels.size(), 0);  // 0 = no forced slot
  std::vector<bool> touched(net.channels.size(), false);
  for (const core::Transaction& tx : txns) {
    for (const core::Hop& h : tx.path) {
      const std::size_t e = idx.channel_by_id.at(h.channel);
      if (touched[e]) continue;
      touched[e] = true;
      if (h.forward && net.channels[e].capacity0 < tx.value - kTol) need_by[e] = tx.time;
    }
  }
  return need_by;
}

}  // namespace

StepOptResult brute_force_step_opt(const Network& net, const TransactionSet& txns,
                                   const OracleBudget& budget) {
  require_valid(net, txns, "brute_force_step_opt");
  StepOptResult out;
  const Deadline deadline(budget.wall_clock_seconds);
  const int n = static_cast<int>(txns.size());
  const std::size_t E = net.channels.size();
  const std::size_t universe = E * static_cast<std::size_t>(n);

  // Feasibility at all: the full-support LP decides whether any schedule
  // routes everything; saves walking the lattice of an impossible instance.
  {
    const lp::LpSolution full = lp::solve_lp(lp::build_lp(net, txns));
    ++out.candidates_tried;
    if (full.status != lp::LpStatus::Optimal) {
      out.known = true;
      out.feasible = false;
      return out;
    }
  }

  const std::vector<int> need_by = first_touch_needs(net, txns);
  auto covers_needs = [&](const std::vector<std::size_t>& combo) {
    for (std::size_t e = 0; e < E; ++e) {
      if (need_by[e] == 0) continue;
      bool covered = false;
      for (std::size_t s : combo) {
        const std::size_t ch = s / static_cast<std::size_t>(n);
        const int t = static_cast<int>(s % static_cast<std::size_t>(n)) + 1;
        if (ch == e && t <= need_by[e]) {
          covered = true;
          break;
        }
      }
      if (!covered) return false;
    }
    return true;
  };

  // Lexicographically next k-combination out of `universe` slot indices.
  auto next_combination = [universe](std::vector<std::size_t>& c) {
    const std::size_t k = c.size();
    std::size_t i = k;
    while (i-- > 0) {
      if (c[i] < universe - k + i) {
        ++c[i];
        for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
        return true;
      }
    }
    return false;
  };

  const int kmax = std::min<int>(budget.max_modifications, static_cast<int>(universe));
  for (int k = 0; k <= kmax; ++k) {
    std::vector<std::size_t> combo(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < combo.size(); ++i) combo[i] = i;
    do {
      if (deadline.passed() || out.candidates_tried > budget.max_candidates) return out;
      if (!covers_needs(combo)) continue;
      ++out.candidates_tried;
      std::vector<lp::ModSlot> slots;
      slots.reserve(combo.size());
      for (std::size_t s : combo) {
        slots.push_back({s / static_cast<std::size_t>(n),
                         static_cast<int>(s % static_cast<std::size_t>(n)) + 1});
      }
      const lp::LpSolution sol = lp::solve_lp(lp::build_lp_restricted(net, txns, slots));
      if (sol.status == lp::LpStatus::Optimal) {
        Schedule witness = lp::extract_schedule_restricted(net, txns, slots, sol);
        const core::Trace tr = core::simulate(net, txns, witness);
        if (!tr.skipped.empty() || !tr.violations.empty()) {
          throw std::logic_error(
              "brute_force_step_opt: LP-feasible support failed simulate replay");
        }
        out.known = true;
        out.feasible = true;
        out.witness = std::move(witness);
        out.sc = core::step_cost(out.witness);
        return out;
      }
    } while (next_combination(combo));
  }
  // Everything up to kmax was infeasible, yet the full LP proved a schedule
  // exists: the optimum exceeds the cap, so the answer stays unknown.
  return out;
}

namespace {

// Depth-first linear-cost search. Completeness rests on forward-only flow
// structure: raises can be just-in-time and minimal, shrinks happen exactly
// when a raise overflows the source's capital, and shrink values sit on
// vertex candidates (zero, a future routing carry, or capital-tight).
class LinearSearch {
 public:
  LinearSearch(const Network& net, const TransactionSet& txns, const OracleBudget& budget)
      : net_(net),
        txns_(txns),
        budget_(budget),
        idx_(core::NetworkIndex::build(net)),
        deadline_(budget.wall_clock_seconds),
        n_(static_cast<int>(txns.size())) {
    const std::size_t E = net.channels.size();
    flow_.assign(E, std::vector<double>(static_cast<std::size_t>(n_) + 1, 0.0));
    if (net.mode == Mode::Consuming) {
      for (const core::Transaction& tx : txns_) {
        for (const core::Hop& h : tx.path) {
          const std::size_t e = idx_.channel_by_id.at(h.channel);
          flow_[e][static_cast<std::size_t>(tx.time)] += h.forward ? tx.value : -tx.value;
        }
      }
    }
    cap_.resize(E);
    for (std::size_t e = 0; e < E; ++e) cap_[e] = net.channels[e].capacity0;
    capital_.resize(net.nodes.size());
    for (std::size_t u = 0; u < net.nodes.size(); ++u) capital_[u] = net.nodes[u].capital0;
  }

  LinearOptResult run() {
    LinearOptResult out;
    // Reverse traversals in consuming mode break the just-in-time argument
    // (a credit can re-grow capacity), so this oracle refuses rather than
    // risk a wrong optimum.
    if (net_.mode == Mode::Consuming) {
      for (const core::Transaction& tx : txns_) {
        for (const core::Hop& h : tx.path) {
          if (!h.forward) return out;  // known = false
        }
      }
    }
    aborted_ = false;
    dfs(1, 0.0);
    out.candidates_tried = nodes_;
    if (aborted_) return out;  // caps hit: unknown
    out.known = true;
    if (best_ == std::numeric_limits<double>::infinity()) {
      out.feasible = false;
      return out;
    }
    out.feasible = true;
    out.lc = best_;
    out.witness = best_schedule_;
    const core::Trace tr = core::simulate(net_, txns_, out.witness);
    if (!tr.skipped.empty() || !tr.violations.empty() || std::abs(tr.lc - best_) > 1e-6) {
      throw std::logic_error("brute_force_linear_opt: witness failed simulate replay");
    }
    // The candidate-value menu is a structural conjecture, not a theorem, so
    // cross-examine the answer against the exact LP: an answer below its
    // optimum (or feasibility it rules out) means a bug, never silence.
    const lp::LpSolution sol = lp::solve_lp(lp::build_lp(net_, txns_));
    if (sol.status == lp::LpStatus::Infeasible) {
      throw std::logic_error("brute_force_linear_opt: found a witness on an LP-infeasible instance");
    }
    if (sol.status == lp::LpStatus::Optimal && best_ < sol.objective - 1e-6) {
      throw std::logic_error("brute_force_linear_opt: answer undercuts the LP optimum");
    }
    return out;
  }

 private:
  // Values a raise of channel e at step t may need to carry to also cover a
  // later routing of e without help: v_t' plus the flow drained in between.
  // Used as shrink floor candidates too. Returns the increasing prefix
  // maxima, smallest first.
  std::vector<double> carry_values(std::size_t e, int from) const {
    std::vector<double> menu;
    double cum = 0.0;
    double running = 0.0;
    for (int t = from; t <= n_; ++t) {
      const core::Transaction& tx = txns_[static_cast<std::size_t>(t - 1)];
      bool fwd = false;
      for (const core::Hop& h : tx.path) {
        if (h.forward && idx_.channel_by_id.at(h.channel) == e) fwd = true;
      }
      if (fwd) {
        const double need = tx.value + cum;
        if (need > running + kTol) {
          running = need;
          menu.push_back(need);
        }
      }
      cum += flow_[e][static_cast<std::size_t>(t)];
    }
    return menu;
  }

  void dfs(int t, double lc) {
    if (aborted_) return;
    if (++nodes_ > budget_.max_candidates || deadline_.passed()) {
      aborted_ = true;
      return;
    }
    if (lc >= best_ - 1e-12) return;
    if (t > n_) {
      best_ = lc;
      best_schedule_ = sched_;
      return;
    }
    const core::Transaction& tx = txns_[static_cast<std::size_t>(t - 1)];

    // Which forward hops cannot carry the value as-is?
    std::vector<std::size_t> deficient;
    for (const core::Hop& h : tx.path) {
      if (!h.forward) continue;
      const std::size_t e = idx_.channel_by_id.at(h.channel);
      if (cap_[e] < tx.value - kTol &&
          std::find(deficient.begin(), deficient.end(), e) == deficient.end()) {
        deficient.push_back(e);
      }
    }

    if (deficient.empty()) {
      advance(t, lc, {});
      return;
    }

    // Minimal just-in-time raises are forced; anything more costs the same
    // later or breaks capital earlier.
    std::vector<std::pair<std::size_t, double>> mods;
    double raise_cost = 0.0;
    for (std::size_t e : deficient) {
      mods.emplace_back(e, tx.value);
      raise_cost += tx.value - cap_[e];
    }

    // Simple paths put at most one raised channel per source node; each
    // overflowing source resolves independently, so chain the per-node
    // shrink enumerations depth-first.
    resolve_capital(t, lc + raise_cost, mods, 0, deficient);
  }

  // Fix capital overflow caused by the raise at deficient[i]'s source, then
  // move to the next raised channel; when all are fixed, take the step.
  void resolve_capital(int t, double lc, std::vector<std::pair<std::size_t, double>> mods,
                       std::size_t i, const std::vector<std::size_t>& deficient) {
    if (aborted_ || lc >= best_ - 1e-12) return;
    if (i == deficient.size()) {
      advance(t, lc, std::move(mods));
      return;
    }
    const std::size_t raised = deficient[i];
    const std::size_t u = idx_.node_by_id.at(net_.channels[raised].source);

    auto modded = [&](std::size_t e, double* val) {
      for (const auto& [me, mv] : mods) {
        if (me == e) {
          *val = mv;
          return true;
        }
      }
      return false;
    };

    double out_sum = 0.0;
    std::vector<std::size_t> sibs;
    for (std::size_t e : idx_.outgoing[u]) {
      double v = cap_[e];
      const bool is_mod = modded(e, &v);
      out_sum += v;
      if (!is_mod) sibs.push_back(e);
    }
    const double overflow = out_sum - capital_[u];
    if (overflow <= kTol) {
      resolve_capital(t, lc, std::move(mods), i + 1, deficient);
      return;
    }
    // Deterministic sibling order: descending capacity, ties by id.
    std::sort(sibs.begin(), sibs.end(), [&](std::size_t a, std::size_t b) {
      if (cap_[a] != cap_[b]) return cap_[a] > cap_[b];
      return net_.channels[a].id < net_.channels[b].id;
    });
    enumerate_shrinks(t, lc, mods, i, deficient, sibs, 0, overflow, false);
  }

  // Assign each sibling a vertex candidate: untouched, zero, a future
  // routing carry below its capacity, or (once per node) "whatever makes the
  // capital row tight". Recurse once the remaining overflow is gone.
  void enumerate_shrinks(int t, double lc, const std::vector<std::pair<std::size_t, double>>& mods,
                         std::size_t i, const std::vector<std::size_t>& deficient,
                         const std::vector<std::size_t>& sibs, std::size_t s, double remaining,
                         bool used_tight) {
    if (aborted_ || lc >= best_ - 1e-12) return;
    if (remaining <= kTol) {
      resolve_capital(t, lc, mods, i + 1, deficient);
      return;
    }
    if (s == sibs.size()) return;  // overflow left and nothing to shrink: dead branch

    const std::size_t e = sibs[s];
    const double c = cap_[e];

    // Option 1: leave this sibling alone.
    enumerate_shrinks(t, lc, mods, i, deficient, sibs, s + 1, remaining, used_tight);
    if (c <= kTol) return;  // nothing to gain from shrinking an empty channel

    std::vector<double> targets;
    targets.push_back(0.0);
    for (double carry : carry_values(e, t + 1)) {
      if (carry < c - kTol) targets.push_back(carry);
    }
    if (!used_tight && remaining < c - kTol) targets.push_back(c - remaining);

    for (double lambda : targets) {
      if (lambda >= c - kTol) continue;
      auto next_mods = mods;
      next_mods.emplace_back(e, lambda);
      const bool tight = std::abs(lambda - (c - remaining)) <= kTol;
      enumerate_shrinks(t, lc + (c - lambda), next_mods, i, deficient, sibs, s + 1,
                        remaining - (c - lambda), used_tight || tight);
    }
  }

  // Commit the step's modifications, apply the flow, recurse, roll back.
  void advance(int t, double lc, std::vector<std::pair<std::size_t, double>> mods) {
    if (aborted_ || lc >= best_ - 1e-12) return;
    const core::Transaction& tx = txns_[static_cast<std::size_t>(t - 1)];

    std::vector<std::pair<std::size_t, double>> undo_cap;
    for (const auto& [e, lambda] : mods) {
      undo_cap.emplace_back(e, cap_[e]);
      cap_[e] = lambda;
      sched_[net_.channels[e].id].push_back({t, lambda});
    }
    // Flow: every forward hop must now clear the value (raises guaranteed
    // it; shrinks never touch path channels of this step).
    bool ok = true;
    for (const core::Hop& h : tx.path) {
      if (h.forward && cap_[idx_.channel_by_id.at(h.channel)] < tx.value - kTol) ok = false;
    }
    if (ok) {
      const bool consuming = net_.mode == Mode::Consuming;
      const std::size_t src = idx_.node_by_id.at(tx.source);
      const std::size_t dst = idx_.node_by_id.at(tx.dest);
      if (consuming) {
        for (const core::Hop& h : tx.path) {
          const std::size_t e = idx_.channel_by_id.at(h.channel);
          cap_[e] += h.forward ? -tx.value : tx.value;
        }
        capital_[src] -= tx.value;
        capital_[dst] += tx.value;
      }
      dfs(t + 1, lc);
      if (consuming) {
        capital_[src] += tx.value;
        capital_[dst] -= tx.value;
        for (const core::Hop& h : tx.path) {
          const std::size_t e = idx_.channel_by_id.at(h.channel);
          cap_[e] -= h.forward ? -tx.value : tx.value;
        }
      }
    }
    for (auto it = mods.rbegin(); it != mods.rend(); ++it) {
      sched_[net_.channels[it->first].id].pop_back();
      if (sched_[net_.channels[it->first].id].empty()) sched_.erase(net_.channels[it->first].id);
    }
    for (auto it = undo_cap.rbegin(); it != undo_cap.rend(); ++it) cap_[it->first] = it->second;
  }

  const Network& net_;
  const TransactionSet& txns_;
  const OracleBudget& budget_;
  core::NetworkIndex idx_;
  Deadline deadline_;
  int n_;
  std::vector<std::vector<double>> flow_;  // [channel][step] net outflow when executed
  std::vector<double> cap_;
  std::vector<double> capital_;
  Schedule sched_;
  double best_ = std::numeric_limits<double>::infinity();
  Schedule best_schedule_;
  std::size_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

LinearOptResult brute_force_linear_opt(const Network& net, const TransactionSet& txns,
                                       const OracleBudget& budget) {
  require_valid(net, txns, "brute_force_linear_opt");
  LinearSearch search(net, txns, budget);
  return search.run();
}

int brute_force_caching(const hardness::CachingInstance& ci) {
  {
    const core::ValidationReport rep = hardness::validate_caching_instance(ci);
    if (!rep.ok()) {
      throw std::invalid_argument("brute_force_caching: invalid instance: " +
                                  rep.problems.front());
    }
  }
  const std::size_t P = ci.pages.size();
  if (P > 16) throw std::invalid_argument("brute_force_caching: more than 16 pages");
  std::map<std::string, std::size_t> page_idx;
  for (std::size_t i = 0; i < P; ++i) page_idx[ci.pages[i].id] = i;

  const std::size_t masks = std::size_t{1} << P;
  std::vector<double> weight(masks, 0.0);
  for (std::size_t m = 1; m < masks; ++m) {
    const std::size_t low = m & (m - 1);
    const std::size_t bit = m ^ low;
    std::size_t b = 0;
    while ((std::size_t{1} << b) != bit) ++b;
    weight[m] = weight[low] + ci.pages[b].size;
  }

  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  std::vector<int> cost(masks, kInf);
  cost[0] = 0;
  for (const std::string& req : ci.requests) {
    const std::size_t p = page_idx.at(req);
    const std::size_t pbit = std::size_t{1} << p;
    std::vector<int> next(masks, kInf);
    for (std::size_t m = 0; m < masks; ++m) {
      if (cost[m] == kInf) continue;
      if (m & pbit) {
        next[m] = std::min(next[m], cost[m]);
        continue;
      }
      // Fault: drop any subset of the cache, then bring the page.
      for (std::size_t d = m;; d = (d - 1) & m) {
        const std::size_t nm = (m & ~d) | pbit;
        if (weight[nm] <= ci.W + core::kTol) {
          const int changes = cost[m] + 1 + __builtin_popcountll(d);
          next[nm] = std::min(next[nm], changes);
        }
        if (d == 0) break;
      }
    }
    cost.swap(next);
  }
  int best = kInf;
  for (int c : cost) best = std::min(best, c);
  if (best == kInf) throw std::logic_error("brute_force_caching: no serving policy exists");
  return best;
}

}  // namespace pcn::oracle
