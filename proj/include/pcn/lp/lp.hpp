#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pcn/core/model.hpp"

namespace pcn::lp {

enum class Rel { Eq, Le, Ge };

struct LpRow {
  std::string name;
  std::vector<std::pair<std::size_t, double>> coefs;  // (variable index, coefficient)
  Rel rel = Rel::Eq;
  double rhs = 0.0;
};

// Minimize objective . x subject to rows, x >= 0 elementwise.
struct LpProblem {
  std::vector<std::string> vars;
  std::vector<double> objective;
  std::vector<LpRow> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

// A potential modification point: channel (by index into net.channels) at a
// given step. The full problem allows one per channel per step; the
// brute-force oracle probes restricted supports.
struct ModSlot {
  std::size_t channel = 0;
  int time = 0;
};

// Exact formulation of the batch / linear-cost problem. Variables, in
// order: c[e][t] for every channel and step (capacity after the step-t
// modification, before the step-t flow), then dplus/dminus per slot (the
// split absolute value of the modification delta). Rows: per-(e,t) flow
// balance chaining c[e][t] to the previous step's post-flow capacity;
// c[e][t] >= v_t for every forward hop of p_t; per-(node,t) capital rows
// bounding the sum of outgoing capacities by the capital entering step t.
// Objective: sum of dplus + dminus.
LpProblem build_lp(const core::Network& net, const core::TransactionSet& txns);

// Same rows, but only the given slots get modification variables; all other
// deltas are structurally zero. Feasibility of this LP == existence of a
// schedule supported on `slots`.
LpProblem build_lp_restricted(const core::Network& net, const core::TransactionSet& txns,
                              const std::vector<ModSlot>& slots);

// Two-phase dense tableau simplex with Bland's anti-cycling rule, pivot
// tolerance 1e-9. Infeasible when the phase-1 optimum exceeds 1e-7. Rejects
// problems with more than 50,000 variables (desk-scale solver).
LpSolution solve_lp(const LpProblem& p);

// Converts an optimal solution of build_lp back into a Schedule: one entry
// per slot whose delta magnitude exceeds 1e-7, with lambda = the c[e][t]
// value. Throws if sol is not optimal.
core::Schedule extract_schedule(const core::Network& net, const core::TransactionSet& txns,
                                const LpSolution& sol);

// Same for build_lp_restricted's layout.
core::Schedule extract_schedule_restricted(const core::Network& net,
                                           const core::TransactionSet& txns,
                                           const std::vector<ModSlot>& slots,
                                           const LpSolution& sol);

// Line-oriented text form for external cross-checks: objective line, then
// one constraint per line ("name: coef*var REL rhs").
std::string dump_lp(const LpProblem& p);

}  // namespace pcn::lp
