#pragma once

#include "pcn/core/model.hpp"
#include "pcn/hardness/caching.hpp"

namespace pcn::oracle {

// Caps for the exhaustive searches. Hitting a cap yields "unknown", never a
// wrong answer.
struct OracleBudget {
  int max_modifications = 10;           // deepest support cardinality probed
  std::size_t max_candidates = 5000000;  // support sets / value combinations tried
  double wall_clock_seconds = 120.0;
};

struct StepOptResult {
  bool known = false;     // budget exhausted before an answer was proven
  bool feasible = false;  // known && !feasible: no schedule routes everything
  int sc = 0;
  core::Schedule witness;
  std::size_t candidates_tried = 0;
};

// Exact minimum step cost by support enumeration: probe modification-point
// sets in increasing cardinality (lexicographic within a cardinality) and
// decide each support by LP feasibility. The first feasible support gives
// the optimum; its witness replays with zero skips and zero violations.
StepOptResult brute_force_step_opt(const core::Network& net, const core::TransactionSet& txns,
                                   const OracleBudget& budget = {});

struct LinearOptResult {
  bool known = false;
  bool feasible = false;
  double lc = 0.0;
  core::Schedule witness;
  std::size_t candidates_tried = 0;
};

// Exact minimum linear cost by depth-first search over steps, deliberately
// independent of the LP machinery: candidate modification values come from
// the instance's value lattice (routing needs, carried forward flows,
// capital-tight shrinks) and every complete schedule is checked by simulate.
// Intended for forward-path instances at toy scale.
LinearOptResult brute_force_linear_opt(const core::Network& net, const core::TransactionSet& txns,
                                       const OracleBudget& budget = {});

// Exact minimum number of cache changes (brings + drops) serving all
// requests, by dynamic programming over (request index, cache contents).
// Throws std::invalid_argument beyond 16 pages (bitmask state).
int brute_force_caching(const hardness::CachingInstance& ci);

}  // namespace pcn::oracle
