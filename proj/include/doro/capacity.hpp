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

#ifndef DORO_CAPACITY_HPP
#define DORO_CAPACITY_HPP

#include <functional>
#include <vector>

#include "doro/grid.hpp"
#include "doro/report.hpp"

namespace doro::capacity {

struct Ball {
  Point3 center{0.0, 0.0, 0.0};
  double radius = 0.0;
};

/// A covering of a mask by closed balls with content cost sum r_j^alpha.
/// Every ball is centered on a true node, so it intersects the mask.
struct BallCover {
  std::vector<Ball> balls;
  double alpha = 1.0;
  double cost = 0.0;

  double recompute_cost() const;
};

/// Nodes where f(x) > t, strict.
BinaryMask superlevel_set(const ScalarField& f, double t);

/// True iff a ball at `center` with radius `r` may be used as a covering
/// candidate; lets callers keep covers inside a feasible region.
using BallFilter = std::function<bool(const Point3& center, double r)>;

/// Greedy upper bound on the alpha-content of the mask: candidate balls are
/// centered on true nodes with dyadic radii in [h, L/2]; each round picks
/// the ball minimizing r^alpha per newly covered node. Empty mask yields an
/// empty cover of cost 0.
BallCover hausdorff_content(const BinaryMask& mask, double alpha,
                            const BallFilter& admissible = nullptr);

/// Exhaustive minimum cost over covers by at most `max_balls` (<= 3)
/// candidate balls, candidates centered on every node with the same dyadic
/// radii; test oracle for small instances. Returns +infinity when no such
/// cover exists.
double hausdorff_content_exact(const BinaryMask& mask, double alpha, int max_balls);

/// Total length (d = 2, marching squares) or area (d = 3, marching cubes) of
/// the piecewise-linear isocontour f = t; the inside region is f > t and
/// ambiguous squares are resolved by the average-of-corners rule.
double boundary_measure(const ScalarField& f, double t);

/// Compares the gradient total variation against the coarea level-sum of
/// boundary measures (midpoint rule over n_levels uniform levels spanning
/// (min f, max f)). Keys: tv_gradient, tv_coarea, ratio (+ _defined flag).
Report coarea_tv(const ScalarField& f, int n_levels);

/// Boxing comparison on a smooth superlevel set: content of {f > t} at
/// exponent d-1 against the boundary measure of the level t. Keys: content,
/// boundary, ratio (+ _defined), cover_balls.
Report boxing_check(const ScalarField& f, double t);

/// Content-only variant when no smooth field is available.
Report boxing_check(const BinaryMask& mask);

}  // namespace doro::capacity

#endif  // DORO_CAPACITY_HPP
