#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcn/core/model.hpp"

namespace pcn::heur {

// A solution encoding for the step-cost search: coefficients in [0,1],
// consumed left to right by the decoder; reads past the end yield 0.
class CoeffArray {
 public:
  CoeffArray() = default;
  explicit CoeffArray(std::vector<double> values);  // throws outside [0,1]

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

struct Fitness {
  int sc = 0;
  int skips = 0;
  double value = 0.0;  // sc + penalty_per_skip * skips
};

struct DecodeResult {
  core::Schedule schedule;
  Fitness fitness;
  core::Trace trace;
};

// Turns a coefficient array into a schedule, walking the transactions in
// order. For each forward hop that cannot carry the value: if the tail's
// headroom (capital minus outgoing capacities) covers the deficit, one
// modification raises the channel to value + coeff * (headroom - deficit);
// otherwise the tail's other outgoing channels are shrunk one by one
// (descending capacity, ties by id, empty channels skipped) to
// coeff * capacity until the raise fits. If it never fits, the transaction
// is skipped and every modification tentatively made for it is rolled back.
// The returned trace is the simulate replay of the returned schedule; the
// decoder's own bookkeeping is cross-checked against it.
DecodeResult decode(const core::Network& net, const core::TransactionSet& txns,
                    const CoeffArray& arr, const core::PenaltyConfig& pen);

enum class Method { Ga, Rhc, Lahc, Pso, Sa };

const char* method_name(Method m);
Method method_from_name(const std::string& name);  // throws on unknown names

struct SearchParams {
  Method method = Method::Lahc;
  std::size_t L = 0;  // array length; 0 means the default 2 * n
  std::size_t budget = 2000;  // maximum decode evaluations
  std::uint64_t seed = 1;

  // ga
  std::size_t population = 50;
  std::size_t elite = 10;
  double crossover_rate = 0.9;
  double mutation_rate = 0.1;
  double sigma = 0.15;
  // rhc-style move (shared by rhc, lahc, sa)
  double delta = 0.1;
  std::size_t k_moves = 2;
  // lahc
  std::size_t history = 30;
  // pso
  std::size_t swarm = 30;
  double omega = 0.7;
  double c1 = 1.5;
  double c2 = 1.5;
  // sa
  double t0 = 10.0;
  double alpha = 0.95;
  double t_min = 1e-3;
};

struct SearchResult {
  Method method = Method::Lahc;
  std::uint64_t seed = 0;
  std::vector<double> best;  // best coefficient array found
  Fitness best_fitness;
  core::Schedule best_schedule;
  std::vector<double> curve;  // best-so-far fitness after each evaluation
  std::size_t evaluations = 0;
};

// Runs one metaheuristic to its evaluation budget. Deterministic per seed;
// the curve is monotone non-increasing and ends at the best fitness.
// The overload without a penalty config uses the horizon default.
SearchResult run_search(const core::Network& net, const core::TransactionSet& txns,
                        const SearchParams& params, const core::PenaltyConfig& pen);
SearchResult run_search(const core::Network& net, const core::TransactionSet& txns,
                        const SearchParams& params);

// Canonical JSON form (used by the determinism tests and the CLI).
nlohmann::json search_result_to_json(const SearchResult& r);

// "evaluation,best_fitness" rows, 1-based evaluation index.
std::string curve_to_csv(const std::vector<double>& curve);

}  // namespace pcn::heur
