// Copyright 2026 The Doro Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "doro/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "doro/error.hpp"

namespace doro::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct VarMap {
  enum Kind { shifted, mirrored, split } kind;
  std::size_t col = 0;
  std::size_t col2 = 0;  // split only
  double offset = 0.0;
};

// The standardized problem: minimize c.x subject to A x (le|ge|eq) b with
// x >= 0 and b >= 0 rowwise.
struct Standardized {
  std::size_t ns = 0;  // structural columns
  std::vector<double> c;
  std::vector<std::vector<double>> rows;
  std::vector<Relation> rels;
  std::vector<double> b;
  std::vector<int> user_row;     // originating user constraint or -1
  std::vector<double> row_sign;  // +1/-1 flip applied to a user row
  std::vector<VarMap> vmap;
};

Standardized standardize(const LinearProgram& lp) {
  const std::size_t n = lp.n_vars();
  Standardized s;
  s.vmap.resize(n);

  std::vector<std::pair<std::size_t, double>> upper_rows;  // (structural col, bound)
  for (std::size_t i = 0; i < n; ++i) {
    const double lb = lp.lower.empty() ? 0.0 : lp.lower[i];
    const double ub = lp.upper.empty() ? kInf : lp.upper[i];
    VarMap& vm = s.vmap[i];
    if (lb > -kInf) {
      vm.kind = VarMap::shifted;
      vm.col = s.ns++;
      vm.offset = lb;
      if (ub < kInf) upper_rows.emplace_back(vm.col, ub - lb);
    } else if (ub < kInf) {
      vm.kind = VarMap::mirrored;
      vm.col = s.ns++;
      vm.offset = ub;
    } else {
      vm.kind = VarMap::split;
      vm.col = s.ns++;
      vm.col2 = s.ns++;
    }
  }

  s.c.assign(s.ns, 0.0);
  const double sense = lp.maximize ? -1.0 : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const VarMap& vm = s.vmap[i];
    const double ci = sense * lp.objective[i];
    switch (vm.kind) {
      case VarMap::shifted: s.c[vm.col] += ci; break;
      case VarMap::mirrored: s.c[vm.col] -= ci; break;
      case VarMap::split:
        s.c[vm.col] += ci;
        s.c[vm.col2] -= ci;
        break;
    }
  }

  auto push_row = [&](const std::vector<double>& coeffs, Relation rel, double bound,
                      int user_idx) {
    std::vector<double> row(s.ns, 0.0);
    double rhs = bound;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const double a = coeffs[i];
      if (a == 0.0) continue;
      const VarMap& vm = s.vmap[i];
      switch (vm.kind) {
        case VarMap::shifted:
          row[vm.col] += a;
          rhs -= a * vm.offset;
          break;
        case VarMap::mirrored:
          row[vm.col] -= a;
          rhs -= a * vm.offset;
          break;
        case VarMap::split:
          row[vm.col] += a;
          row[vm.col2] -= a;
          break;
      }
    }
    double sign = 1.0;
    if (rhs < 0.0 || (rhs == 0.0 && rel == Relation::ge)) {
      sign = -1.0;
      rhs = -rhs;
      for (double& v : row) v = -v;
      if (rel == Relation::le) {
        rel = Relation::ge;
      } else if (rel == Relation::ge) {
        rel = Relation::le;
      }
    }
    s.rows.push_back(std::move(row));
    s.rels.push_back(rel);
    s.b.push_back(rhs);
    s.user_row.push_back(user_idx);
    s.row_sign.push_back(sign);
  };

  for (std::size_t k = 0; k < lp.constraints.size(); ++k) {
    push_row(lp.constraints[k].coeffs, lp.constraints[k].rel, lp.constraints[k].bound,
             static_cast<int>(k));
  }
  for (const auto& [col, bound] : upper_rows) {
    std::vector<double> row(s.ns, 0.0);
    row[col] = 1.0;
    s.rows.push_back(std::move(row));
    s.rels.push_back(Relation::le);
    s.b.push_back(bound);
    s.user_row.push_back(-1);
    s.row_sign.push_back(1.0);
  }
  return s;
}

// Dense simplex tableau with maintained phase-1 and phase-2 cost rows.
class Tableau {
 public:
  explicit Tableau(const Standardized& s) : s_(s) {
    m_ = s.rows.size();
    ns_ = s.ns;
    slack_col_.assign(m_, SIZE_MAX);
    art_col_.assign(m_, SIZE_MAX);
    std::size_t col = ns_;
    for (std::size_t r = 0; r < m_; ++r) {
      if (s.rels[r] != Relation::eq) slack_col_[r] = col++;
    }
    first_art_ = col;
    for (std::size_t r = 0; r < m_; ++r) {
      if (s.rels[r] != Relation::le) art_col_[r] = col++;
    }
    width_ = col + 1;
    rhs_ = col;
    has_eq_rows_ = false;
    for (Relation rel : s.rels) has_eq_rows_ = has_eq_rows_ || rel == Relation::eq;
    row_op_limit_ = width_ - 1;

    t_.assign(m_ * width_, 0.0);
    basis_.assign(m_, SIZE_MAX);
    active_.assign(m_, 1);
    for (std::size_t r = 0; r < m_; ++r) {
      double* row = t_.data() + r * width_;
      std::copy(s.rows[r].begin(), s.rows[r].end(), row);
      if (slack_col_[r] != SIZE_MAX) row[slack_col_[r]] = s.rels[r] == Relation::le ? 1.0 : -1.0;
      if (art_col_[r] != SIZE_MAX) row[art_col_[r]] = 1.0;
      row[rhs_] = s.b[r];
      basis_[r] = art_col_[r] != SIZE_MAX ? art_col_[r] : slack_col_[r];
    }

    cost1_.assign(width_, 0.0);
    cost2_.assign(width_, 0.0);
    std::copy(s.c.begin(), s.c.end(), cost2_.begin());
    // Phase-1 costs: one per artificial; canonicalize against the basic
    // artificial rows.
    for (std::size_t r = 0; r < m_; ++r) {
      if (art_col_[r] == SIZE_MAX) continue;
      const double* row = t_.data() + r * width_;
      for (std::size_t j = 0; j < width_; ++j) cost1_[j] -= row[j];
      cost1_[art_col_[r]] += 1.0;
    }

    double cmax = 1.0;
    for (double v : s.c) cmax = std::max(cmax, std::abs(v));
    tol_reduced_ = 1e-9 * cmax;
  }

  // Runs one simplex phase on the given cost row. Returns false on
  // unboundedness.
  bool run_phase(std::vector<double>& cost, bool forbid_artificials) {
    int stall = 0;
    bool bland = false;
    double last_obj = -cost[rhs_];
    const std::size_t iter_cap = 20000 + 40 * (m_ + width_);
    for (std::size_t iter = 0; iter < iter_cap; ++iter) {
      const std::size_t enter = pick_entering(cost, forbid_artificials, bland);
      if (enter == SIZE_MAX) return true;  // optimal for this phase
      const std::size_t leave = ratio_test(enter, bland);
      if (leave == SIZE_MAX) return false;  // unbounded direction
      pivot(leave, enter);
      const double obj = -cost[rhs_];
      if (obj < last_obj - 1e-12 * (1.0 + std::abs(last_obj))) {
        stall = 0;
        bland = false;
        last_obj = obj;
      } else if (++stall > 2000) {
        bland = true;  // Bland's rule as the backstop anti-cycling fallback
      }
    }
    throw Error("simplex iteration limit exceeded");
  }

  std::size_t pick_entering(const std::vector<double>& cost, bool forbid_artificials,
                            bool bland) const {
    const std::size_t limit = forbid_artificials ? first_art_ : width_ - 1;
    if (bland) {
      for (std::size_t j = 0; j < limit; ++j) {
        if (cost[j] < -tol_reduced_ && !is_basic_col(j)) return j;
      }
      return SIZE_MAX;
    }
    std::size_t best = SIZE_MAX;
    double best_val = -tol_reduced_;
    for (std::size_t j = 0; j < limit; ++j) {
      if (cost[j] < best_val) {
        best_val = cost[j];
        best = j;
      }
    }
    return best;
  }

  // Lexicographic ratio test: primary ratio on the rhs, ties resolved by
  // comparing the identity-block columns (the rows of B^{-1}) divided by the
  // pivot entry. Equivalent to solving the symbolically perturbed problem
  // b + (eps, eps^2, ...), so every pivot strictly lex-decreases and the
  // sweep cannot cycle or revisit a degenerate vertex.
  std::size_t ratio_test(std::size_t enter, bool bland) const {
    std::size_t leave = SIZE_MAX;
    double best = kInf;
    for (std::size_t r = 0; r < m_; ++r) {
      if (!active_[r]) continue;
      const double a = t_[r * width_ + enter];
      if (a <= 1e-10) continue;
      const double ratio = t_[r * width_ + rhs_] / a;
      if (leave == SIZE_MAX || ratio < best - 1e-11 * (1.0 + std::abs(best))) {
        best = ratio;
        leave = r;
        continue;
      }
      if (ratio > best + 1e-11 * (1.0 + std::abs(best))) continue;
      if (bland) {
        // Bland's leaving rule: smallest basic variable index among ties.
        if (basis_[r] < basis_[leave]) {
          best = ratio;
          leave = r;
        }
        continue;
      }
      if (lex_less(r, leave, enter)) {
        best = ratio;
        leave = r;
      }
    }
    return leave;
  }

  // True iff row r is lexicographically smaller than row s after division
  // by the entering column entries.
  bool lex_less(std::size_t r, std::size_t s, std::size_t enter) const {
    const double ar = t_[r * width_ + enter];
    const double as = t_[s * width_ + enter];
    // The slack block alone spans the row identity once artificials are
    // compacted away, which is the precondition for the compaction.
    for (std::size_t c = ns_; c < row_op_limit_; ++c) {
      const double vr = t_[r * width_ + c] / ar;
      const double vs = t_[s * width_ + c] / as;
      if (std::abs(vr - vs) > 1e-11 * (1.0 + std::abs(vr) + std::abs(vs))) return vr < vs;
    }
    return r < s;
  }

  void pivot(std::size_t r, std::size_t enter) {
    double* prow = t_.data() + r * width_;
    const double p = prow[enter];
    const double inv = 1.0 / p;
    const std::size_t limit = row_op_limit_;
    for (std::size_t j = 0; j < limit; ++j) prow[j] *= inv;
    prow[rhs_] *= inv;
    prow[enter] = 1.0;

    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || !active_[i]) continue;
      double* row = t_.data() + i * width_;
      const double f = row[enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < limit; ++j) row[j] -= f * prow[j];
      row[rhs_] -= f * prow[rhs_];
      row[enter] = 0.0;
    }
    for (std::vector<double>* cost : {&cost1_, &cost2_}) {
      const double f = (*cost)[enter];
      if (f == 0.0) continue;
      double* c = cost->data();
      for (std::size_t j = 0; j < limit; ++j) c[j] -= f * prow[j];
      c[rhs_] -= f * prow[rhs_];
      c[enter] = 0.0;
    }
    basis_[r] = enter;
  }

  // Once phase 1 is over and no equality rows need their artificial columns
  // for dual extraction, the dead artificial block is dropped from row
  // updates.
  void compact_artificials() {
    if (!has_eq_rows_) row_op_limit_ = first_art_;
  }

  bool is_basic_col(std::size_t j) const {
    for (std::size_t r = 0; r < m_; ++r) {
      if (active_[r] && basis_[r] == j) return true;
    }
    return false;
  }

  bool needs_phase1() const { return first_art_ + 1 < width_; }

  double phase1_objective() const { return -cost1_[rhs_]; }

  // After phase 1: pivot artificials out of the basis; rows that cannot be
  // cleared are redundant and get deactivated.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (!active_[r] || basis_[r] < first_art_) continue;
      const double* row = t_.data() + r * width_;
      std::size_t j = SIZE_MAX;
      for (std::size_t k = 0; k < first_art_; ++k) {
        if (std::abs(row[k]) > 1e-9) {
          j = k;
          break;
        }
      }
      if (j == SIZE_MAX) {
        active_[r] = 0;
      } else {
        pivot(r, j);
      }
    }
  }

  bool run_phase2() { return run_phase(cost2_, true); }
  bool run_phase1() { return run_phase(cost1_, false); }

  std::vector<double> structural_solution() const {
    std::vector<double> x(ns_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      if (active_[r] && basis_[r] < ns_) x[basis_[r]] = t_[r * width_ + rhs_];
    }
    return x;
  }

  // Dual multiplier of standardized row r, read from the reduced cost of
  // the row's own identity column (artificial if present, else slack).
  double dual_of_row(std::size_t r) const {
    if (slack_col_[r] != SIZE_MAX) {
      return s_.rels[r] == Relation::le ? -cost2_[slack_col_[r]] : cost2_[slack_col_[r]];
    }
    return -cost2_[art_col_[r]];  // eq rows keep live artificial columns
  }

  double objective_value() const { return -cost2_[rhs_]; }

  double dual_objective() const {
    double v = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (active_[r]) v += dual_of_row(r) * s_.b[r];
    }
    return v;
  }

 private:
  const Standardized& s_;
  std::size_t m_ = 0, ns_ = 0, width_ = 0, rhs_ = 0, first_art_ = 0;
  std::vector<double> t_;
  std::vector<double> cost1_, cost2_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> slack_col_, art_col_;
  std::vector<char> active_;
  bool has_eq_rows_ = false;
  std::size_t row_op_limit_ = 0;
  double tol_reduced_ = 1e-9;
};

}  // namespace

void LinearProgram::validate() const {
  const std::size_t n = n_vars();
  if (n == 0) throw ValidationError("linear program has no variables");
  for (double v : objective) {
    if (!std::isfinite(v)) throw ValidationError("objective coefficients must be finite");
  }
  if (!lower.empty() && lower.size() != n) throw ValidationError("lower bound count mismatch");
  if (!upper.empty() && upper.size() != n) throw ValidationError("upper bound count mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    const double lb = lower.empty() ? 0.0 : lower[i];
    const double ub = upper.empty() ? kInf : upper[i];
    if (std::isnan(lb) || std::isnan(ub) || lb > ub) {
      throw ValidationError("variable bounds must satisfy lower <= upper");
    }
  }
  for (const Constraint& c : constraints) {
    if (c.coeffs.size() != n) {
      throw ValidationError("constraint coefficient count does not match variable count");
    }
    for (double v : c.coeffs) {
      if (!std::isfinite(v)) throw ValidationError("constraint coefficients must be finite");
    }
    if (!std::isfinite(c.bound)) throw ValidationError("constraint bounds must be finite");
  }
}

LPSolution solve_lp(const LinearProgram& lp) {
  lp.validate();
  const Standardized s = standardize(lp);
  Tableau tab(s);

  LPSolution sol;
  if (tab.needs_phase1()) {
    if (!tab.run_phase1()) {
      // A phase-1 unbounded direction cannot happen (costs are
      // non-negative); treat defensively as infeasible.
      sol.status = LPStatus::infeasible;
      return sol;
    }
    double bmax = 1.0;
    for (double v : s.b) bmax = std::max(bmax, std::abs(v));
    if (tab.phase1_objective() > 1e-7 * bmax) {
      sol.status = LPStatus::infeasible;
      return sol;
    }
    tab.drive_out_artificials();
  }
  tab.compact_artificials();

  if (!tab.run_phase2()) {
    sol.status = LPStatus::unbounded;
    return sol;
  }

  // Recover the user-space solution.
  const std::vector<double> xs = tab.structural_solution();
  sol.x.assign(lp.n_vars(), 0.0);
  for (std::size_t i = 0; i < lp.n_vars(); ++i) {
    const VarMap& vm = s.vmap[i];
    switch (vm.kind) {
      case VarMap::shifted: sol.x[i] = vm.offset + xs[vm.col]; break;
      case VarMap::mirrored: sol.x[i] = vm.offset - xs[vm.col]; break;
      case VarMap::split: sol.x[i] = xs[vm.col] - xs[vm.col2]; break;
    }
  }
  sol.value = 0.0;
  for (std::size_t i = 0; i < lp.n_vars(); ++i) sol.value += lp.objective[i] * sol.x[i];

  // Constraint residuals in user space.
  sol.max_residual = 0.0;
  for (const Constraint& c : lp.constraints) {
    double lhs = 0.0;
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) lhs += c.coeffs[i] * sol.x[i];
    double viol = 0.0;
    if (c.rel == Relation::le) viol = lhs - c.bound;
    if (c.rel == Relation::ge) viol = c.bound - lhs;
    if (c.rel == Relation::eq) viol = std::abs(lhs - c.bound);
    sol.max_residual = std::max(sol.max_residual, viol);
  }

  // Strong duality certificate on the standardized problem.
  const double primal = tab.objective_value();
  const double dual = tab.dual_objective();
  sol.duality_gap = std::abs(primal - dual);
  if (sol.duality_gap > 1e-7 * (1.0 + std::abs(primal))) {
    throw Error("simplex certificate failed: duality gap " + std::to_string(sol.duality_gap));
  }

  // User-facing duals with row flips undone.
  sol.dual.assign(lp.constraints.size(), 0.0);
  for (std::size_t r = 0; r < s.rows.size(); ++r) {
    if (s.user_row[r] >= 0) {
      sol.dual[static_cast<std::size_t>(s.user_row[r])] = s.row_sign[r] * tab.dual_of_row(r);
    }
  }

  sol.status = LPStatus::optimal;
  return sol;
}

}  // namespace doro::lp
