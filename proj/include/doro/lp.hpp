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

#ifndef DORO_LP_HPP
#define DORO_LP_HPP

#include <vector>

namespace doro::lp {

enum class Relation { le, ge, eq };

struct Constraint {
  std::vector<double> coeffs;
  Relation rel = Relation::le;
  double bound = 0.0;
};

/// Dense linear program. Default variable bounds are [0, +inf); pass
/// -infinity / +infinity entries in `lower` / `upper` for free or
/// unbounded-above variables. Empty bound vectors mean all-default.
struct LinearProgram {
  std::vector<double> objective;
  bool maximize = false;
  std::vector<Constraint> constraints;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t n_vars() const { return objective.size(); }
  void validate() const;
};

enum class LPStatus { optimal, infeasible, unbounded };

struct LPSolution {
  LPStatus status = LPStatus::infeasible;
  std::vector<double> x;      // variable values (user space), when optimal
  double value = 0.0;         // objective at x
  std::vector<double> dual;   // one multiplier per user constraint
  double duality_gap = 0.0;   // |primal - dual objective| certificate
  double max_residual = 0.0;  // worst constraint violation at x
};

/// Two-phase dense primal simplex. Pricing is Dantzig with Bland's rule as
/// the anti-cycling fallback on degenerate stalls. On optimal exit the dual
/// solution is read from the final basis and strong duality is certified to
/// 1e-7; constraint residuals are checked to 1e-8. Infeasible and unbounded
/// instances are reported through the status, never thrown.
LPSolution solve_lp(const LinearProgram& lp);

}  // namespace doro::lp

#endif  // DORO_LP_HPP
