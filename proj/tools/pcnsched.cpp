#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pcn/core/io.hpp"
#include "pcn/core/simulate.hpp"
#include "pcn/core/validate.hpp"
#include "pcn/hardness/adversary.hpp"
#include "pcn/hardness/caching.hpp"
#include "pcn/heur/heur.hpp"
#include "pcn/lp/lp.hpp"
#include "pcn/oracle/oracle.hpp"
#include "pcn/toolkit/toolkit.hpp"

using nlohmann::json;

namespace {

// Exit codes: 0 success, 1 infeasible / violations found, 2 input error.
constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kInputError = 2;

void print_json(const json& j) { std::cout << pcn::core::canonical_dump(j); }

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    pcn::core::write_file_atomic(path, content);
  }
}

json trace_to_json(const pcn::core::Trace& tr) {
  json violations = json::array();
  for (const pcn::core::Violation& v : tr.violations) {
    violations.push_back({{"kind", v.kind}, {"subject", v.subject}, {"time", v.time}});
  }
  json final_capacity = json::object();
  for (std::size_t i = 0; i < tr.channel_ids.size(); ++i) {
    final_capacity[tr.channel_ids[i]] = tr.capacity[i].back();
  }
  json final_capital = json::object();
  for (std::size_t i = 0; i < tr.node_ids.size(); ++i) {
    final_capital[tr.node_ids[i]] = tr.capital[i].back();
  }
  return json{{"lc", tr.lc},
              {"sc", tr.sc},
              {"executed", tr.executed},
              {"skipped", tr.skipped},
              {"violations", violations},
              {"final_capacity", final_capacity},
              {"final_capital", final_capital}};
}

// "--param key=value" knobs for the search subcommand.
void apply_search_param(pcn::heur::SearchParams& p, const std::string& kv) {
  const std::size_t eq = kv.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got: " + kv);
  const std::string key = kv.substr(0, eq);
  const std::string val = kv.substr(eq + 1);
  auto num = [&] { return std::stod(val); };
  auto count = [&] { return static_cast<std::size_t>(std::stoull(val)); };
  if (key == "L") p.L = count();
  else if (key == "population") p.population = count();
  else if (key == "elite") p.elite = count();
  else if (key == "crossover_rate") p.crossover_rate = num();
  else if (key == "mutation_rate") p.mutation_rate = num();
  else if (key == "sigma") p.sigma = num();
  else if (key == "delta") p.delta = num();
  else if (key == "k") p.k_moves = count();
  else if (key == "history") p.history = count();
  else if (key == "swarm") p.swarm = count();
  else if (key == "omega") p.omega = num();
  else if (key == "c1") p.c1 = num();
  else if (key == "c2") p.c2 = num();
  else if (key == "t0") p.t0 = num();
  else if (key == "alpha") p.alpha = num();
  else if (key == "t_min") p.t_min = num();
  else throw std::invalid_argument("unknown search param: " + key);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"payment-channel capacity scheduling toolkit"};
  app.require_subcommand(1);

  // validate
  std::string v_net, v_txns, v_sched;
  CLI::App* validate = app.add_subcommand("validate", "check network/transactions/schedule files");
  validate->add_option("network", v_net, "network JSON file")->required();
  validate->add_option("--txns", v_txns, "transactions JSONL file");
  validate->add_option("--schedule", v_sched, "schedule JSON file");

  // simulate
  std::string s_net, s_txns, s_sched, s_trace_out;
  double s_penalty = -1.0;
  CLI::App* simulate = app.add_subcommand("simulate", "replay transactions under a schedule");
  simulate->add_option("network", s_net)->required();
  simulate->add_option("txns", s_txns)->required();
  simulate->add_option("--schedule", s_sched, "schedule JSON file (default: empty schedule)");
  simulate->add_option("--penalty", s_penalty, "per-skip penalty (default: horizon-scaled)");
  simulate->add_option("--out", s_trace_out, "write the trace summary JSON here");

  // solve-lp
  std::string lp_net, lp_txns, lp_dump, lp_out;
  CLI::App* solvelp = app.add_subcommand("solve-lp", "minimize linear cost exactly");
  solvelp->add_option("network", lp_net)->required();
  solvelp->add_option("txns", lp_txns)->required();
  solvelp->add_option("--dump-lp", lp_dump, "write the LP in readable form");
  solvelp->add_option("--out", lp_out, "write the extracted schedule JSON here");

  // search
  std::string h_net, h_txns, h_method = "lahc", h_trace, h_out;
  std::size_t h_budget = 2000;
  std::uint64_t h_seed = 1;
  std::vector<std::string> h_params;
  CLI::App* search = app.add_subcommand("search", "run a metaheuristic");
  search->add_option("network", h_net)->required();
  search->add_option("txns", h_txns)->required();
  search->add_option("--method", h_method, "ga|rhc|lahc|pso|sa")->required();
  search->add_option("--budget", h_budget, "decode evaluations");
  search->add_option("--seed", h_seed);
  search->add_option("--param", h_params, "knob override, key=value (repeatable)");
  search->add_option("--trace", h_trace, "write the convergence curve CSV here");
  search->add_option("--out", h_out, "write the result JSON here");

  // oracle
  std::string o_net, o_txns, o_cost = "step";
  int o_max_mods = 10;
  std::size_t o_max_cand = 5000000;
  double o_time = 120.0;
  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive optimum for tiny instances");
  oracle->add_option("network", o_net)->required();
  oracle->add_option("txns", o_txns)->required();
  oracle->add_option("--cost", o_cost, "step|linear")->required();
  oracle->add_option("--max-mods", o_max_mods);
  oracle->add_option("--max-candidates", o_max_cand);
  oracle->add_option("--time-limit", o_time, "seconds");

  // adversary
  std::size_t a_delta = 2, a_steps = 60;
  double a_capital = 1.0, a_epsilon = 0.0;
  std::string a_algo = "greedy", a_transcript;
  bool a_consuming = false;
  CLI::App* adversary = app.add_subcommand("adversary", "online lower-bound game");
  adversary->add_option("--delta", a_delta, "parallel channels")->required();
  adversary->add_option("--steps", a_steps)->required();
  adversary->add_option("--capital", a_capital);
  adversary->add_option("--epsilon", a_epsilon, "0 = capital/(100*delta)");
  adversary->add_option("--algo", a_algo, "online player (greedy)");
  adversary->add_option("--transcript", a_transcript, "write JSONL transcript here");
  adversary->add_flag("--consuming", a_consuming, "play in consuming mode");

  // reduce-caching
  std::string rc_in, rc_out_net, rc_out_txns;
  CLI::App* reduce = app.add_subcommand("reduce-caching", "caching instance -> scheduling instance");
  reduce->add_option("caching", rc_in, "caching instance JSON")->required();
  reduce->add_option("--out-network", rc_out_net);
  reduce->add_option("--out-txns", rc_out_txns);

  // lift-schedule
  std::string lf_in, lf_sched, lf_out;
  CLI::App* lift = app.add_subcommand("lift-schedule", "schedule of the reduced instance -> caching policy");
  lift->add_option("caching", lf_in, "caching instance JSON")->required();
  lift->add_option("schedule", lf_sched, "schedule JSON")->required();
  lift->add_option("--out", lf_out, "write the policy JSON here");

  // import-snapshot
  std::string is_in, is_out;
  double is_slack = 1.5;
  CLI::App* import_snap = app.add_subcommand("import-snapshot", "channel-graph snapshot -> network");
  import_snap->add_option("snapshot", is_in)->required();
  import_snap->add_option("--slack", is_slack, "capital = slack * outgoing capacity");
  import_snap->add_option("--out", is_out, "write the network JSON here");

  // sample-graph
  std::string sg_in, sg_out;
  std::size_t sg_size = 50;
  std::uint64_t sg_seed = 1;
  CLI::App* sample = app.add_subcommand("sample-graph", "connected subgraph by breadth-first growth");
  sample->add_option("network", sg_in)->required();
  sample->add_option("--size", sg_size)->required();
  sample->add_option("--seed", sg_seed);
  sample->add_option("--out", sg_out, "write the network JSON here");

  // gen-txns
  std::string gt_in, gt_out;
  std::size_t gt_count = 1;
  double gt_lo = 1.0, gt_hi = 1.0;
  std::uint64_t gt_seed = 1;
  CLI::App* gen = app.add_subcommand("gen-txns", "random shortest-path payments");
  gen->add_option("network", gt_in)->required();
  gen->add_option("--count", gt_count)->required();
  gen->add_option("--lo", gt_lo);
  gen->add_option("--hi", gt_hi);
  gen->add_option("--seed", gt_seed);
  gen->add_option("--out", gt_out, "write the transactions JSONL here");

  // bench
  std::string b_config, b_out;
  CLI::App* bench = app.add_subcommand("bench", "method comparison harness");
  bench->add_option("--config", b_config, "bench config JSON")->required();
  bench->add_option("--out", b_out, "output directory (overrides the config)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate)) {
      pcn::core::Network net = pcn::core::load_network(v_net);
      pcn::core::ValidationReport rep = pcn::core::validate_network(net);
      pcn::core::TransactionSet txns;
      if (!v_txns.empty()) {
        txns = pcn::core::load_transactions(v_txns);
        const auto r = pcn::core::validate_transactions(net, txns);
        rep.problems.insert(rep.problems.end(), r.problems.begin(), r.problems.end());
      }
      if (!v_sched.empty()) {
        const pcn::core::Schedule sched = pcn::core::load_schedule(v_sched);
        const auto r =
            pcn::core::validate_schedule(net, sched, static_cast<int>(txns.size()) + 1000000);
        rep.problems.insert(rep.problems.end(), r.problems.begin(), r.problems.end());
      }
      print_json(json{{"ok", rep.ok()}, {"problems", rep.problems}});
      return rep.ok() ? kOk : kInfeasible;
    }

    if (app.got_subcommand(simulate)) {
      const pcn::core::Network net = pcn::core::load_network(s_net);
      const pcn::core::TransactionSet txns = pcn::core::load_transactions(s_txns);
      pcn::core::Schedule sched;
      if (!s_sched.empty()) sched = pcn::core::load_schedule(s_sched);
      pcn::core::PenaltyConfig pen =
          pcn::core::PenaltyConfig::for_horizon(static_cast<int>(txns.size()));
      if (s_penalty >= 0.0) pen.penalty_per_skip = s_penalty;
      const pcn::core::Trace tr = pcn::core::simulate(net, txns, sched, pen);
      const json out = trace_to_json(tr);
      if (!s_trace_out.empty()) pcn::core::write_file_atomic(s_trace_out, pcn::core::canonical_dump(out));
      print_json(out);
      return tr.violations.empty() && tr.skipped.empty() ? kOk : kInfeasible;
    }

    if (app.got_subcommand(solvelp)) {
      const pcn::core::Network net = pcn::core::load_network(lp_net);
      const pcn::core::TransactionSet txns = pcn::core::load_transactions(lp_txns);
      const pcn::lp::LpProblem prob = pcn::lp::build_lp(net, txns);
      if (!lp_dump.empty()) pcn::core::write_file_atomic(lp_dump, pcn::lp::dump_lp(prob));
      const pcn::lp::LpSolution sol = pcn::lp::solve_lp(prob);
      if (sol.status != pcn::lp::LpStatus::Optimal) {
        print_json(json{{"status", sol.status == pcn::lp::LpStatus::Infeasible ? "infeasible"
                                                                               : "unbounded"}});
        return kInfeasible;
      }
      const pcn::core::Schedule sched = pcn::lp::extract_schedule(net, txns, sol);
      if (!lp_out.empty()) pcn::core::save_schedule(sched, lp_out);
      print_json(json{{"status", "optimal"},
                      {"objective", sol.objective},
                      {"schedule", pcn::core::schedule_to_json(sched)}});
      return kOk;
    }

    if (app.got_subcommand(search)) {
      const pcn::core::Network net = pcn::core::load_network(h_net);
      const pcn::core::TransactionSet txns = pcn::core::load_transactions(h_txns);
      pcn::heur::SearchParams params;
      params.method = pcn::heur::method_from_name(h_method);
      params.budget = h_budget;
      params.seed = h_seed;
      for (const std::string& kv : h_params) apply_search_param(params, kv);
      const pcn::heur::SearchResult res = pcn::heur::run_search(net, txns, params);
      if (!h_trace.empty()) {
        pcn::core::write_file_atomic(h_trace, pcn::heur::curve_to_csv(res.curve));
      }
      const std::string out = pcn::core::canonical_dump(pcn::heur::search_result_to_json(res));
      write_or_print(h_out, out);
      if (!h_out.empty()) print_json(json{{"best_fitness", res.best_fitness.value}});
      return res.best_fitness.skips == 0 ? kOk : kInfeasible;
    }

    if (app.got_subcommand(oracle)) {
      const pcn::core::Network net = pcn::core::load_network(o_net);
      const pcn::core::TransactionSet txns = pcn::core::load_transactions(o_txns);
      pcn::oracle::OracleBudget budget;
      budget.max_modifications = o_max_mods;
      budget.max_candidates = o_max_cand;
      budget.wall_clock_seconds = o_time;
      if (o_cost == "step") {
        const pcn::oracle::StepOptResult r = pcn::oracle::brute_force_step_opt(net, txns, budget);
        print_json(json{{"known", r.known},
                        {"feasible", r.feasible},
                        {"sc", r.sc},
                        {"witness", pcn::core::schedule_to_json(r.witness)},
                        {"candidates_tried", r.candidates_tried}});
        return r.known && !r.feasible ? kInfeasible : kOk;
      }
      if (o_cost == "linear") {
        const pcn::oracle::LinearOptResult r =
            pcn::oracle::brute_force_linear_opt(net, txns, budget);
        print_json(json{{"known", r.known},
                        {"feasible", r.feasible},
                        {"lc", r.lc},
                        {"witness", pcn::core::schedule_to_json(r.witness)},
                        {"candidates_tried", r.candidates_tried}});
        return r.known && !r.feasible ? kInfeasible : kOk;
      }
      std::cerr << "unknown --cost: " << o_cost << "\n";
      return kInputError;
    }

    if (app.got_subcommand(adversary)) {
      if (a_algo != "greedy") {
        std::cerr << "unknown --algo: " << a_algo << "\n";
        return kInputError;
      }
      pcn::hardness::AdversaryConfig cfg;
      cfg.delta = a_delta;
      cfg.steps = a_steps;
      cfg.capital = a_capital;
      cfg.epsilon = a_epsilon;
      cfg.mode = a_consuming ? pcn::core::Mode::Consuming : pcn::core::Mode::NonConsuming;
      const pcn::hardness::AdversaryReport rep =
          pcn::hardness::adversary_run(pcn::hardness::greedy_online, cfg);
      if (!a_transcript.empty()) pcn::core::write_file_atomic(a_transcript, rep.transcript);
      print_json(json{{"online_sc", rep.online_sc},
                      {"offline_sc", rep.offline_sc},
                      {"ratio", rep.ratio},
                      {"disqualified", rep.disqualified}});
      return rep.disqualified ? kInfeasible : kOk;
    }

    if (app.got_subcommand(reduce)) {
      const pcn::hardness::CachingInstance ci = pcn::hardness::load_caching_instance(rc_in);
      const pcn::hardness::ReducedInstance ri = pcn::hardness::reduce_caching(ci);
      if (!rc_out_net.empty()) pcn::core::save_network(ri.net, rc_out_net);
      if (!rc_out_txns.empty()) pcn::core::save_transactions(ri.txns, rc_out_txns);
      print_json(json{{"budget", ri.budget},
                      {"channels", ri.net.channels.size()},
                      {"transactions", ri.txns.size()}});
      return kOk;
    }

    if (app.got_subcommand(lift)) {
      const pcn::hardness::CachingInstance ci = pcn::hardness::load_caching_instance(lf_in);
      const pcn::core::Schedule sched = pcn::core::load_schedule(lf_sched);
      const pcn::hardness::CachingPolicy policy = pcn::hardness::lift_schedule(ci, sched);
      const auto rep = pcn::hardness::validate_policy(ci, policy);
      const json out = json{{"policy", pcn::hardness::policy_to_json(policy)},
                            {"cost", pcn::hardness::policy_cost(policy)},
                            {"valid", rep.ok()}};
      if (!lf_out.empty()) {
        pcn::core::write_file_atomic(lf_out,
                                     pcn::core::canonical_dump(pcn::hardness::policy_to_json(policy)));
      }
      print_json(out);
      return rep.ok() ? kOk : kInfeasible;
    }

    if (app.got_subcommand(import_snap)) {
      const pcn::toolkit::SnapshotGraph raw = pcn::toolkit::load_snapshot(is_in);
      const pcn::core::Network net = pcn::toolkit::import_snapshot(raw, is_slack);
      if (!is_out.empty()) pcn::core::save_network(net, is_out);
      print_json(json{{"nodes", net.nodes.size()}, {"channels", net.channels.size()}});
      return kOk;
    }

    if (app.got_subcommand(sample)) {
      const pcn::core::Network net = pcn::core::load_network(sg_in);
      const pcn::core::Network sub = pcn::toolkit::sample_connected_subgraph(net, sg_size, sg_seed);
      if (!sg_out.empty()) pcn::core::save_network(sub, sg_out);
      print_json(json{{"nodes", sub.nodes.size()}, {"channels", sub.channels.size()}});
      return kOk;
    }

    if (app.got_subcommand(gen)) {
      const pcn::core::Network net = pcn::core::load_network(gt_in);
      pcn::toolkit::WorkloadSpec spec;
      spec.count = gt_count;
      spec.lo = gt_lo;
      spec.hi = gt_hi;
      spec.seed = gt_seed;
      const pcn::core::TransactionSet txns = pcn::toolkit::gen_transactions(net, spec);
      if (!gt_out.empty()) {
        pcn::core::save_transactions(txns, gt_out);
      } else {
        std::cout << pcn::core::transactions_to_jsonl(txns);
      }
      return kOk;
    }

    if (app.got_subcommand(bench)) {
      const json cfg_json = json::parse(pcn::core::read_file(b_config));
      const std::string base = std::filesystem::path(b_config).parent_path().string();
      pcn::toolkit::BenchConfig cfg = pcn::toolkit::bench_config_from_json(cfg_json, base);
      if (!b_out.empty()) cfg.out_dir = b_out;
      const pcn::toolkit::BenchReport rep = pcn::toolkit::run_bench(cfg);
      print_json(json{{"files", rep.files}, {"failures", rep.failures}});
      return rep.failures == 0 ? kOk : kInfeasible;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
