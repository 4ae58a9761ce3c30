#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pcn/kernels/kernels.hpp"
#include "pcn/lp/lp.hpp"

namespace pcn::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kFeasTol = 1e-7;

// Dense two-phase tableau simplex. Small and auditable beats asymptotically
// clever at the sizes this artifact targets (a few thousand variables).
class Simplex {
 public:
  explicit Simplex(const LpProblem& p) : p_(p), nv_(p.vars.size()) {
    std::size_t nslack = 0;
    for (const LpRow& r : p.rows) {
      if (r.rel != Rel::Eq) ++nslack;
    }
    // Worst case every row also needs an artificial.
    const std::size_t m = p.rows.size();
    ncols_ = nv_ + nslack + m;  // artificial block sized below; rhs kept separately
    slack0_ = nv_;
    art0_ = nv_ + nslack;

    rows_.assign(m, std::vector<double>(ncols_ + 1, 0.0));
    basis_.assign(m, 0);

    std::size_t next_slack = slack0_;
    std::size_t next_art = art0_;
    for (std::size_t i = 0; i < m; ++i) {
      const LpRow& r = p.rows[i];
      double sign = 1.0;
      Rel rel = r.rel;
      double rhs = r.rhs;
      if (rhs < 0.0) {  // normalize to nonnegative rhs
        sign = -1.0;
        rhs = -rhs;
        if (rel == Rel::Le) {
          rel = Rel::Ge;
        } else if (rel == Rel::Ge) {
          rel = Rel::Le;
        }
      }
      for (const auto& [var, coef] : r.coefs) {
        if (var >= nv_) throw std::invalid_argument("lp row references unknown variable");
        rows_[i][var] += sign * coef;
      }
      rows_[i][ncols_] = rhs;
      if (rel == Rel::Le) {
        rows_[i][next_slack] = 1.0;
        basis_[i] = next_slack++;
      } else if (rel == Rel::Ge) {
        rows_[i][next_slack++] = -1.0;
        rows_[i][next_art] = 1.0;
        basis_[i] = next_art++;
      } else {
        rows_[i][next_art] = 1.0;
        basis_[i] = next_art++;
      }
    }
    nart_ = next_art - art0_;
    allowed_.assign(ncols_, true);
    for (std::size_t j = art0_ + nart_; j < ncols_; ++j) allowed_[j] = false;  // unused art slots
  }

  LpSolution run() {
    LpSolution sol;
    // Phase 1: minimize the sum of artificials.
    cost_.assign(ncols_ + 1, 0.0);
    for (std::size_t j = art0_; j < art0_ + nart_; ++j) cost_[j] = 1.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] >= art0_) {
        kernels::axpy(-1.0, rows_[i].data(), cost_.data(), ncols_ + 1);
      }
    }
    if (!iterate(/*check_monotone=*/false)) {
      throw std::logic_error("simplex: phase 1 unbounded");  // cannot happen: objective >= 0
    }
    if (-cost_[ncols_] > kFeasTol) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    purge_artificials();
    for (std::size_t j = art0_; j < art0_ + nart_; ++j) allowed_[j] = false;

    // Phase 2: original objective, expressed over the current basis.
    cost_.assign(ncols_ + 1, 0.0);
    for (std::size_t j = 0; j < nv_; ++j) cost_[j] = p_.objective[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const double cb = basis_[i] < nv_ ? p_.objective[basis_[i]] : 0.0;
      if (cb != 0.0) kernels::axpy(-cb, rows_[i].data(), cost_.data(), ncols_ + 1);
    }
    if (!iterate(/*check_monotone=*/true)) {
      sol.status = LpStatus::Unbounded;
      return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.x.assign(nv_, 0.0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < nv_) sol.x[basis_[i]] = rows_[i][ncols_];
    }
    sol.objective = 0.0;
    for (std::size_t j = 0; j < nv_; ++j) sol.objective += p_.objective[j] * sol.x[j];
    verify(sol);
    return sol;
  }

 private:
  // Bland's rule: entering = lowest-index improving column; leaving = among
  // minimal ratios, the row whose basic variable has the lowest index.
  bool iterate(bool check_monotone) {
    double prev_obj = -cost_[ncols_];
    while (true) {
      std::size_t enter = ncols_;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (allowed_[j] && cost_[j] < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter == ncols_) return true;  // optimal

      std::size_t leave = rows_.size();
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const double a = rows_[i][enter];
        if (a > kPivotTol) {
          const double ratio = rows_[i][ncols_] / a;
          if (ratio < best_ratio - 1e-12 ||
              (ratio <= best_ratio + 1e-12 &&
               (leave == rows_.size() || basis_[i] < basis_[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave == rows_.size()) return false;  // unbounded direction

      pivot(leave, enter);
      const double obj = -cost_[ncols_];
      if (check_monotone && obj > prev_obj + kFeasTol) {
        throw std::logic_error("simplex: objective increased across a pivot");
      }
      prev_obj = obj;
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    std::vector<double>& prow = rows_[r];
    kernels::scale(1.0 / prow[c], prow.data(), ncols_ + 1);
    prow[c] = 1.0;  // kill residual rounding on the pivot element itself
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      const double f = rows_[i][c];
      if (f != 0.0) {
        kernels::axpy(-f, prow.data(), rows_[i].data(), ncols_ + 1);
        rows_[i][c] = 0.0;
      }
    }
    const double f = cost_[c];
    if (f != 0.0) {
      kernels::axpy(-f, prow.data(), cost_.data(), ncols_ + 1);
      cost_[c] = 0.0;
    }
    basis_[r] = c;
  }

  // After phase 1, basic artificials sit at zero. Swap each for a real
  // column when possible; a row with no real coefficients is redundant and
  // is dropped.
  void purge_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < art0_) {
        ++i;
        continue;
      }
      std::size_t enter = ncols_;
      for (std::size_t j = 0; j < art0_; ++j) {
        if (std::abs(rows_[i][j]) > kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter == ncols_) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        pivot(i, enter);
        ++i;
      }
    }
  }

  // Solver self-check: an optimal vertex must satisfy the original rows.
  void verify(const LpSolution& sol) const {
    for (const LpRow& r : p_.rows) {
      double lhs = 0.0;
      for (const auto& [var, coef] : r.coefs) lhs += coef * sol.x[var];
      const double diff = lhs - r.rhs;
      const bool ok = (r.rel == Rel::Eq && std::abs(diff) <= 1e-6) ||
                      (r.rel == Rel::Le && diff <= 1e-6) || (r.rel == Rel::Ge && diff >= -1e-6);
      if (!ok) throw std::logic_error("simplex: optimal point violates row " + r.name);
    }
    for (double v : sol.x) {
      if (v < -1e-6) throw std::logic_error("simplex: negative variable at optimum");
    }
  }

  const LpProblem& p_;
  std::size_t nv_;
  std::size_t ncols_ = 0;
  std::size_t slack0_ = 0;
  std::size_t art0_ = 0;
  std::size_t nart_ = 0;
  std::vector<std::vector<double>> rows_;
  std::vector<double> cost_;
  std::vector<std::size_t> basis_;
  std::vector<char> allowed_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
  if (p.vars.size() > 50000) {
    throw std::invalid_argument("solve_lp: more than 50,000 variables (desk-scale solver)");
  }
  if (p.rows.empty()) {
    // No constraints: with x >= 0, the minimum of a nonnegative objective is
    // at the origin; any negative cost coefficient means unbounded.
    LpSolution sol;
    for (double c : p.objective) {
      if (c < 0.0) {
        sol.status = LpStatus::Unbounded;
        return sol;
      }
    }
    sol.status = LpStatus::Optimal;
    sol.objective = 0.0;
    sol.x.assign(p.vars.size(), 0.0);
    return sol;
  }
  Simplex s(p);
  return s.run();
}

}  // namespace pcn::lp
