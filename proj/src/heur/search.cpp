#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pcn/core/io.hpp"
#include "pcn/heur/heur.hpp"
#include "pcn/kernels/kernels.hpp"
#include "pcn/util/rng.hpp"

namespace pcn::heur {

const char* method_name(Method m) {
  switch (m) {
    case Method::Ga:
      return "ga";
    case Method::Rhc:
      return "rhc";
    case Method::Lahc:
      return "lahc";
    case Method::Pso:
      return "pso";
    case Method::Sa:
      return "sa";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  for (Method m : {Method::Ga, Method::Rhc, Method::Lahc, Method::Pso, Method::Sa}) {
    if (name == method_name(m)) return m;
  }
  throw std::invalid_argument("unknown search method: " + name);
}

namespace {

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// Counts evaluations, tracks the incumbent, and grows the best-so-far curve;
// every method funnels its decode calls through here.
class Evaluator {
 public:
  Evaluator(const core::Network& net, const core::TransactionSet& txns,
            const core::PenaltyConfig& pen, std::size_t budget)
      : net_(net), txns_(txns), pen_(pen), budget_(budget) {}

  bool has_budget() const { return used_ < budget_; }

  Fitness evaluate(const std::vector<double>& values) {
    DecodeResult r = decode(net_, txns_, CoeffArray(values), pen_);
    ++used_;
    if (curve_.empty() || r.fitness.value < best_.value) {
      best_ = r.fitness;
      best_values_ = values;
      best_schedule_ = std::move(r.schedule);
    }
    curve_.push_back(best_.value);
    return r.fitness;
  }

  SearchResult result(Method method, std::uint64_t seed) && {
    SearchResult out;
    out.method = method;
    out.seed = seed;
    out.best = std::move(best_values_);
    out.best_fitness = best_;
    out.best_schedule = std::move(best_schedule_);
    out.curve = std::move(curve_);
    out.evaluations = used_;
    return out;
  }

 private:
  const core::Network& net_;
  const core::TransactionSet& txns_;
  const core::PenaltyConfig& pen_;
  std::size_t budget_;
  std::size_t used_ = 0;
  Fitness best_{};
  std::vector<double> best_values_;
  core::Schedule best_schedule_;
  std::vector<double> curve_;
};

std::vector<double> random_array(util::Rng& rng, std::size_t L) {
  std::vector<double> v(L);
  for (double& x : v) x = rng.uniform01();
  return v;
}

// The +-delta perturbation shared by rhc, lahc and sa.
void perturb(util::Rng& rng, std::vector<double>& v, double delta, std::size_t k) {
  if (v.empty()) return;
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t i = rng.index(v.size());
    const double step = rng.uniform01() < 0.5 ? -delta : delta;
    v[i] = clamp01(v[i] + step);
  }
}

void run_ga(util::Rng& rng, Evaluator& ev, const SearchParams& p, std::size_t L) {
  struct Individual {
    std::vector<double> values;
    double fitness;
  };
  std::vector<Individual> pop;
  pop.reserve(p.population);
  for (std::size_t i = 0; i < p.population && ev.has_budget(); ++i) {
    Individual ind{random_array(rng, L), 0.0};
    ind.fitness = ev.evaluate(ind.values).value;
    pop.push_back(std::move(ind));
  }
  while (ev.has_budget() && !pop.empty()) {
    std::stable_sort(pop.begin(), pop.end(),
                     [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
    const std::size_t nparents = std::min(p.elite, pop.size());
    pop.resize(nparents);
    std::vector<Individual> offspring;
    for (std::size_t j = nparents; j < p.population && ev.has_budget(); ++j) {
      const Individual& p1 = pop[rng.index(nparents)];
      const Individual& p2 = pop[rng.index(nparents)];
      std::vector<double> child = p1.values;
      if (rng.uniform01() < p.crossover_rate) {
        for (std::size_t g = 0; g < L; ++g) {
          child[g] = rng.uniform01() < 0.5 ? p1.values[g] : p2.values[g];
        }
      }
      for (std::size_t g = 0; g < L; ++g) {
        if (rng.uniform01() < p.mutation_rate) {
          child[g] = clamp01(child[g] + rng.normal(0.0, p.sigma));
        }
      }
      Individual ind{std::move(child), 0.0};
      ind.fitness = ev.evaluate(ind.values).value;
      offspring.push_back(std::move(ind));
    }
    for (Individual& o : offspring) pop.push_back(std::move(o));
  }
}

void run_rhc(util::Rng& rng, Evaluator& ev, const SearchParams& p, std::size_t L) {
  std::vector<double> cur = random_array(rng, L);
  double fcur = ev.evaluate(cur).value;
  while (ev.has_budget()) {
    std::vector<double> cand = cur;
    perturb(rng, cand, p.delta, p.k_moves);
    const double f = ev.evaluate(cand).value;
    if (f < fcur) {
      cur = std::move(cand);
      fcur = f;
    }
  }
}

void run_lahc(util::Rng& rng, Evaluator& ev, const SearchParams& p, std::size_t L) {
  std::vector<double> cur = random_array(rng, L);
  double fcur = ev.evaluate(cur).value;
  std::vector<double> history(p.history, fcur);
  std::size_t it = 0;
  while (ev.has_budget()) {
    std::vector<double> cand = cur;
    perturb(rng, cand, p.delta, p.k_moves);
    const double f = ev.evaluate(cand).value;
    const std::size_t slot = it % p.history;
    if (f <= fcur || f <= history[slot]) {
      cur = std::move(cand);
      fcur = f;
    }
    history[slot] = fcur;  // the accepted-or-kept cost, per late acceptance
    ++it;
  }
}

void run_pso(util::Rng& rng, Evaluator& ev, const SearchParams& p, std::size_t L) {
  const std::size_t S = p.swarm;
  std::vector<std::vector<double>> x, v, pbest;
  std::vector<double> pbf;
  for (std::size_t i = 0; i < S && ev.has_budget(); ++i) {
    x.push_back(random_array(rng, L));
    v.emplace_back(L, 0.0);
    const double f = ev.evaluate(x.back()).value;
    pbest.push_back(x.back());
    pbf.push_back(f);
  }
  if (pbest.empty()) return;
  auto argmin = [&]() {
    std::size_t g = 0;
    for (std::size_t i = 1; i < pbf.size(); ++i) {
      if (pbf[i] < pbf[g]) g = i;
    }
    return g;
  };
  std::size_t g = argmin();
  std::vector<double> r1(L), r2(L);
  while (ev.has_budget()) {
    const std::vector<double> gb = pbest[g];  // one global best per sweep
    for (std::size_t i = 0; i < x.size() && ev.has_budget(); ++i) {
      for (double& r : r1) r = rng.uniform01();
      for (double& r : r2) r = rng.uniform01();
      kernels::pso_velocity(p.omega, p.c1, p.c2, r1.data(), r2.data(), pbest[i].data(),
                            gb.data(), x[i].data(), v[i].data(), L);
      kernels::add_clamp01(v[i].data(), x[i].data(), L);
      const double f = ev.evaluate(x[i]).value;
      if (f < pbf[i]) {
        pbf[i] = f;
        pbest[i] = x[i];
      }
    }
    g = argmin();
  }
}

void run_sa(util::Rng& rng, Evaluator& ev, const SearchParams& p, std::size_t L) {
  std::vector<double> cur = random_array(rng, L);
  double fcur = ev.evaluate(cur).value;
  double T = p.t0;
  while (ev.has_budget() && T >= p.t_min) {
    std::vector<double> cand = cur;
    perturb(rng, cand, p.delta, p.k_moves);
    const double f = ev.evaluate(cand).value;
    // min(1, exp((old-new)/T)): improving or equal moves always pass.
    bool accept = f <= fcur;
    if (!accept) accept = rng.uniform01() < std::exp((fcur - f) / T);
    if (accept) {
      cur = std::move(cand);
      fcur = f;
    }
    T *= p.alpha;
  }
}

void check_params(const SearchParams& p) {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string("search param must be positive: ") + what);
  };
  auto rate = [](double v, const char* what) {
    if (!(v > 0.0 && v < 1.0)) {
      throw std::invalid_argument(std::string("search rate must be in (0,1): ") + what);
    }
  };
  if (p.budget == 0) throw std::invalid_argument("search budget must be positive");
  if (p.population == 0 || p.elite == 0 || p.elite > p.population) {
    throw std::invalid_argument("ga population/elite sizes are inconsistent");
  }
  if (p.k_moves == 0 || p.history == 0 || p.swarm == 0) {
    throw std::invalid_argument("search param must be positive: k/history/swarm");
  }
  rate(p.crossover_rate, "crossover_rate");
  rate(p.mutation_rate, "mutation_rate");
  rate(p.alpha, "alpha");
  positive(p.sigma, "sigma");
  positive(p.delta, "delta");
  positive(p.omega, "omega");
  positive(p.c1, "c1");
  positive(p.c2, "c2");
  positive(p.t0, "t0");
  positive(p.t_min, "t_min");
}

}  // namespace

SearchResult run_search(const core::Network& net, const core::TransactionSet& txns,
                        const SearchParams& params, const core::PenaltyConfig& pen) {
  check_params(params);
  const std::size_t L = params.L != 0 ? params.L : 2 * txns.size();
  util::Rng rng(params.seed);
  Evaluator ev(net, txns, pen, params.budget);
  switch (params.method) {
    case Method::Ga:
      run_ga(rng, ev, params, L);
      break;
    case Method::Rhc:
      run_rhc(rng, ev, params, L);
      break;
    case Method::Lahc:
      run_lahc(rng, ev, params, L);
      break;
    case Method::Pso:
      run_pso(rng, ev, params, L);
      break;
    case Method::Sa:
      run_sa(rng, ev, params, L);
      break;
  }
  return std::move(ev).result(params.method, params.seed);
}

SearchResult run_search(const core::Network& net, const core::TransactionSet& txns,
                        const SearchParams& params) {
  return run_search(net, txns, params,
                    core::PenaltyConfig::for_horizon(static_cast<int>(txns.size())));
}

nlohmann::json search_result_to_json(const SearchResult& r) {
  nlohmann::json curve = nlohmann::json::array();
  for (double v : r.curve) curve.push_back(v);
  nlohmann::json best = nlohmann::json::array();
  for (double v : r.best) best.push_back(v);
  return nlohmann::json{
      {"method", method_name(r.method)},
      {"seed", r.seed},
      {"evaluations", r.evaluations},
      {"fitness", {{"sc", r.best_fitness.sc},
                   {"skips", r.best_fitness.skips},
                   {"value", r.best_fitness.value}}},
      {"best", best},
      {"schedule", core::schedule_to_json(r.best_schedule)},
      {"curve", curve}};
}

std::string curve_to_csv(const std::vector<double>& curve) {
  std::string out = "evaluation,best_fitness\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out += std::to_string(i + 1);
    out += ',';
    out += core::double_str(curve[i]);
    out += '\n';
  }
  return out;
}

}  // namespace pcn::heur
