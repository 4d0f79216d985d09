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

#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>

#include "doro/error.hpp"
#include "doro/lp.hpp"
#include "lp_oracle.hpp"

using namespace doro::lp;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mix(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double u01(std::uint64_t& s) { return static_cast<double>(mix(s) >> 11) * 0x1.0p-53; }

// Feasible bounded random instance: b = A x0 + slack with x0 in the box.
LinearProgram random_lp(std::uint64_t seed) {
  std::uint64_t s = seed * 0x9e3779b97f4a7c15ULL + 17;
  const std::size_t n = 5, m = 8;
  LinearProgram lp;
  lp.maximize = true;
  lp.objective.resize(n);
  for (double& c : lp.objective) c = 2.0 * u01(s) - 1.0;
  std::vector<double> x0(n);
  for (double& v : x0) v = u01(s);
  for (std::size_t r = 0; r < m; ++r) {
    Constraint c;
    c.coeffs.resize(n);
    double lhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      c.coeffs[i] = 2.0 * u01(s) - 1.0;
      lhs += c.coeffs[i] * x0[i];
    }
    c.rel = Relation::le;
    c.bound = lhs + 0.1 + u01(s);
    lp.constraints.push_back(std::move(c));
  }
  lp.lower.assign(n, 0.0);
  lp.upper.assign(n, 10.0);
  return lp;
}

}  // namespace

TEST_CASE("simplex solves the toy box maximum") {
  LinearProgram lp;
  lp.maximize = true;
  lp.objective = {1.0, 1.0};
  lp.constraints.push_back({{1.0, 0.0}, Relation::le, 1.0});
  lp.constraints.push_back({{0.0, 1.0}, Relation::le, 1.0});
  const LPSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LPStatus::optimal);
  CHECK(sol.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sol.x[0] == doctest::Approx(1.0));
  CHECK(sol.x[1] == doctest::Approx(1.0));
  CHECK(sol.max_residual <= 1e-8);
  CHECK(sol.duality_gap <= 1e-7);
  // Multipliers of the internal minimized form: their b-pairing recovers
  // the (sense-flipped) optimum.
  CHECK(sol.dual[0] * 1.0 + sol.dual[1] * 1.0 == doctest::Approx(-sol.value).epsilon(1e-7));
}

TEST_CASE("unbounded and infeasible instances are reported, not thrown") {
  LinearProgram unbounded;
  unbounded.maximize = true;
  unbounded.objective = {1.0};
  CHECK(solve_lp(unbounded).status == LPStatus::unbounded);

  LinearProgram infeasible;
  infeasible.objective = {1.0};
  infeasible.constraints.push_back({{1.0}, Relation::le, -1.0});  // vs x >= 0
  CHECK(solve_lp(infeasible).status == LPStatus::infeasible);
}

TEST_CASE("equality rows and free variables") {
  LinearProgram lp;
  lp.maximize = true;
  lp.objective = {1.0, 0.0};
  lp.constraints.push_back({{1.0, 1.0}, Relation::eq, 1.0});
  const LPSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LPStatus::optimal);
  CHECK(sol.value == doctest::Approx(1.0));

  LinearProgram free_lp;
  free_lp.objective = {1.0};  // minimize x
  free_lp.lower = {-kInf};
  free_lp.upper = {kInf};
  free_lp.constraints.push_back({{1.0}, Relation::ge, -3.0});
  const LPSolution fsol = solve_lp(free_lp);
  REQUIRE(fsol.status == LPStatus::optimal);
  CHECK(fsol.value == doctest::Approx(-3.0));

  LinearProgram mirrored;
  mirrored.maximize = true;
  mirrored.objective = {1.0};
  mirrored.lower = {-kInf};
  mirrored.upper = {4.0};
  const LPSolution msol = solve_lp(mirrored);
  REQUIRE(msol.status == LPStatus::optimal);
  CHECK(msol.value == doctest::Approx(4.0));
}

TEST_CASE("beale's degenerate cycling instance terminates at the optimum") {
  LinearProgram lp;
  lp.objective = {-0.75, 150.0, -0.02, 6.0};
  lp.constraints.push_back({{0.25, -60.0, -1.0 / 25.0, 9.0}, Relation::le, 0.0});
  lp.constraints.push_back({{0.5, -90.0, -1.0 / 50.0, 3.0}, Relation::le, 0.0});
  lp.constraints.push_back({{0.0, 0.0, 1.0, 0.0}, Relation::le, 1.0});
  const LPSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LPStatus::optimal);
  CHECK(sol.value == doctest::Approx(-0.05).epsilon(1e-9));
}

TEST_CASE("fifty random instances match the vertex-enumeration oracle") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const LinearProgram lp = random_lp(seed);
    const LPSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LPStatus::optimal);
    const auto oracle = doro::lp::testing::vertex_enumeration_max(lp);
    REQUIRE(oracle.has_value());
    CHECK(sol.value == doctest::Approx(*oracle).epsilon(1e-7));
    CHECK(sol.max_residual <= 1e-8);
    CHECK(sol.duality_gap <= 1e-7 * (1.0 + std::abs(sol.value)));
  }
}

TEST_CASE("validation rejects malformed programs") {
  LinearProgram lp;
  CHECK_THROWS_AS(solve_lp(lp), doro::ValidationError);  // no variables
  lp.objective = {1.0, 2.0};
  lp.constraints.push_back({{1.0}, Relation::le, 1.0});  // arity mismatch
  CHECK_THROWS_AS(solve_lp(lp), doro::ValidationError);
  lp.constraints.clear();
  lp.lower = {1.0, 2.0};
  lp.upper = {0.0, 3.0};  // crossed bounds
  CHECK_THROWS_AS(solve_lp(lp), doro::ValidationError);
}
