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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "doro/capacity.hpp"
#include "doro/corpus.hpp"
#include "doro/error.hpp"
#include "doro/grid.hpp"

using namespace doro;
using capacity::BallCover;

namespace {

// Rasterized disk (in index distance) around a node.
BinaryMask disk_mask(const GridSpec& g, const Index3& center, double radius_nodes) {
  BinaryMask mask(g);
  for (std::size_t i = 0; i < mask.bits.size(); ++i) {
    const Index3 iv = g.unindex(i);
    double sq = 0.0;
    for (int a = 0; a < g.d; ++a) {
      const double dv = double(iv[a] - center[a]);
      sq += dv * dv;
    }
    mask.bits[i] = sq <= radius_nodes * radius_nodes * (1 + 1e-12);
  }
  return mask;
}

std::uint64_t mix(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Random union of 1..3 rasterized disks with dyadic-friendly radii, kept
// well inside a 32^2 grid so the 3-ball exact oracle is meaningful.
BinaryMask random_small_mask(const GridSpec& g, std::uint64_t seed) {
  std::uint64_t s = seed * 0x9e3779b97f4a7c15ULL + 1;
  BinaryMask mask(g);
  const int disks = 1 + static_cast<int>(mix(s) % 3);
  for (int k = 0; k < disks; ++k) {
    const int radius = 1 << (mix(s) % 3);  // 1, 2 or 4 nodes
    Index3 c{0, 0, 0};
    for (int a = 0; a < g.d; ++a) {
      c[a] = 8 + static_cast<int>(mix(s) % 16);
    }
    const BinaryMask d = disk_mask(g, c, radius);
    for (std::size_t i = 0; i < mask.bits.size(); ++i) mask.bits[i] |= d.bits[i];
  }
  return mask;
}

}  // namespace

TEST_CASE("superlevel sets: empty, full, and the gauss disk oracle") {
  const GridSpec g = GridSpec::square(2, 128, 1.0 / 128);
  FieldParams p;
  p.sigma = 1.0 / 8.0;
  const ScalarField f = make_test_field(FieldKind::gauss_bump, g, p, 0);

  CHECK(capacity::superlevel_set(f, grid_sup_norm(f)).count_true() == 0);  // strict
  CHECK(capacity::superlevel_set(f, -1.0).count_true() == g.node_count());

  // Analytic level-radius oracle: {exp(-r^2/2s^2) > 1/2} is the disk of
  // radius s sqrt(2 ln 2).
  const BinaryMask half = capacity::superlevel_set(f, 0.5);
  const double R = p.sigma * std::sqrt(2.0 * std::log(2.0));
  std::size_t inner = 0, outer = 0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const Index3 iv = g.unindex(i);
    const double dx = g.h * iv[0] - 0.5, dy = g.h * iv[1] - 0.5;
    const double rho = std::sqrt(dx * dx + dy * dy);
    inner += rho < R - 2.0 * g.h;
    outer += rho < R + 2.0 * g.h;
  }
  CHECK(half.count_true() >= inner);
  CHECK(half.count_true() <= outer);
}

TEST_CASE("greedy content: single node and exact disk") {
  const GridSpec g = GridSpec::square(2, 32, 1.0 / 32);
  BinaryMask one(g);
  one.bits[g.index({13, 21, 0})] = 1;
  const BallCover c1 = capacity::hausdorff_content(one, 1.0);
  REQUIRE(c1.balls.size() == 1);
  CHECK(c1.balls[0].radius == doctest::Approx(g.h));
  CHECK(c1.cost == doctest::Approx(g.h));

  // A rasterized disk of dyadic radius is covered by its own center ball.
  const BinaryMask disk = disk_mask(g, {16, 16, 0}, 8.0);
  const BallCover cd = capacity::hausdorff_content(disk, 1.0);
  CHECK(cd.cost <= 1.1 * (8.0 * g.h + g.h));
  CHECK(cd.cost == doctest::Approx(cd.recompute_cost()).epsilon(1e-12));
  // Cross-check against the exhaustive two-ball oracle.
  const double exact = capacity::hausdorff_content_exact(disk, 1.0, 2);
  CHECK(cd.cost >= exact - 1e-12);
  CHECK(exact == doctest::Approx(8.0 * g.h).epsilon(0.26));  // in [R, R+2h]
}

TEST_CASE("greedy content: two distant disks stay two balls") {
  const GridSpec g = GridSpec::square(2, 128, 1.0 / 128);
  BinaryMask mask(g);
  const BinaryMask d1 = disk_mask(g, {32, 32, 0}, 4.0);
  const BinaryMask d2 = disk_mask(g, {96, 96, 0}, 4.0);
  for (std::size_t i = 0; i < mask.bits.size(); ++i) mask.bits[i] = d1.bits[i] | d2.bits[i];
  const BallCover cover = capacity::hausdorff_content(mask, 1.0);
  CHECK(cover.balls.size() == 2);
  CHECK(cover.cost == doctest::Approx(2.0 * 4.0 * g.h).epsilon(1e-12));
}

TEST_CASE("exact oracle: single node and bounds") {
  const GridSpec g = GridSpec::square(2, 32, 1.0 / 32);
  BinaryMask one(g);
  one.bits[g.index({16, 16, 0})] = 1;
  CHECK(capacity::hausdorff_content_exact(one, 1.0, 1) == doctest::Approx(g.h));
  CHECK(capacity::hausdorff_content_exact(one, 0.5, 1) == doctest::Approx(std::sqrt(g.h)));

  const GridSpec big = GridSpec::square(2, 64, 1.0 / 64);
  CHECK_THROWS_AS(capacity::hausdorff_content_exact(BinaryMask(big), 1.0, 2), SizeError);
  CHECK_THROWS_AS(capacity::hausdorff_content_exact(one, 1.0, 4), ValidationError);
}

TEST_CASE("greedy dominates exact on random small masks, within the greedy guarantee") {
  const GridSpec g = GridSpec::square(2, 32, 1.0 / 32);
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const BinaryMask mask = random_small_mask(g, seed);
    const double exact = capacity::hausdorff_content_exact(mask, 1.0, 3);
    const BallCover greedy = capacity::hausdorff_content(mask, 1.0);
    REQUIRE(std::isfinite(exact));
    CHECK(greedy.cost >= exact - 1e-12);
    const double n_true = double(mask.count_true());
    CHECK(greedy.cost <= (1.0 + std::log(n_true)) * exact + 1e-12);
  }
}

TEST_CASE("exact content is monotone and subadditive on oracle instances") {
  const GridSpec g = GridSpec::square(2, 32, 1.0 / 32);
  const BinaryMask small = disk_mask(g, {14, 14, 0}, 2.0);
  const BinaryMask large = disk_mask(g, {14, 14, 0}, 4.0);
  CHECK(capacity::hausdorff_content_exact(small, 1.0, 3) <=
        capacity::hausdorff_content_exact(large, 1.0, 3) + 1e-12);

  const BinaryMask a = disk_mask(g, {10, 10, 0}, 2.0);
  const BinaryMask b = disk_mask(g, {22, 20, 0}, 3.0);
  BinaryMask ab(g);
  for (std::size_t i = 0; i < ab.bits.size(); ++i) ab.bits[i] = a.bits[i] | b.bits[i];
  CHECK(capacity::hausdorff_content_exact(ab, 1.0, 3) <=
        capacity::hausdorff_content_exact(a, 1.0, 3) +
            capacity::hausdorff_content_exact(b, 1.0, 3) + 1e-12);
}

TEST_CASE("greedy content is 3-quasi-monotone under mask inclusion") {
  const GridSpec g = GridSpec::square(2, 64, 1.0 / 64);
  for (std::uint64_t seed = 50; seed < 60; ++seed) {
    std::uint64_t s = seed;
    BinaryMask small(g);
    for (int k = 0; k < 4; ++k) {
      const Index3 c{10 + int(mix(s) % 40), 10 + int(mix(s) % 40), 0};
      const BinaryMask d = disk_mask(g, c, double(1 + int(mix(s) % 4)));
      for (std::size_t i = 0; i < small.bits.size(); ++i) small.bits[i] |= d.bits[i];
    }
    BinaryMask bigger = small;
    const BinaryMask extra = disk_mask(g, {int(12 + mix(s) % 36), int(12 + mix(s) % 36), 0}, 3.0);
    for (std::size_t i = 0; i < bigger.bits.size(); ++i) bigger.bits[i] |= extra.bits[i];
    CHECK(capacity::hausdorff_content(small, 1.0).cost <=
          3.0 * capacity::hausdorff_content(bigger, 1.0).cost + 1e-12);
  }
}

TEST_CASE("boundary measure: range, circle oracle and joint scaling") {
  const GridSpec g = GridSpec::square(2, 128, 1.0 / 128);
  FieldParams p;
  p.radius = 0.3;
  p.transition = 0.04;
  const ScalarField disk = make_test_field(FieldKind::smoothed_disk, g, p, 0);

  CHECK(capacity::boundary_measure(disk, 2.0) == 0.0);
  CHECK(capacity::boundary_measure(disk, -0.5) == 0.0);

  // The half level passes through radius 0.3: circumference 2 pi 0.3.
  CHECK(capacity::boundary_measure(disk, 0.5) ==
        doctest::Approx(2.0 * std::numbers::pi * 0.3).epsilon(0.02));

  ScalarField scaled = disk;
  for (double& v : scaled.samples) v *= 3.7;
  CHECK(capacity::boundary_measure(scaled, 3.7 * 0.5) ==
        doctest::Approx(capacity::boundary_measure(disk, 0.5)).epsilon(1e-12));
}

TEST_CASE("marching squares checkerboard saddles follow the average rule") {
  // Every cell is a saddle with corner average 0; at level 0 the rule cuts
  // off the strictly-positive corners, two 0.7071h segments per cell.
  const GridSpec g = GridSpec::square(2, 8, 1.0 / 8);
  ScalarField f(g);
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    const Index3 iv = g.unindex(i);
    f.samples[i] = ((iv[0] + iv[1]) % 2 == 0) ? 1.0 : -1.0;
  }
  const double expected = 49.0 * 2.0 * std::sqrt(0.5) * g.h;
  CHECK(capacity::boundary_measure(f, 0.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("marching cubes: sphere area oracle in d = 3") {
  const GridSpec g = GridSpec::square(3, 64, 1.0 / 64);
  FieldParams p;
  p.radius = 0.3;
  p.transition = 0.06;
  const ScalarField ball = make_test_field(FieldKind::smoothed_disk, g, p, 0);
  const double area = capacity::boundary_measure(ball, 0.5);
  CHECK(area == doctest::Approx(4.0 * std::numbers::pi * 0.09).epsilon(0.03));
}

TEST_CASE("coarea: constant field and the gauss ratio contract") {
  const GridSpec g = GridSpec::square(2, 128, 1.0 / 128);
  const Report flat = capacity::coarea_tv(ScalarField(g, 2.0), 16);
  CHECK(flat.number("tv_gradient") == 0.0);
  CHECK(flat.number("tv_coarea") == 0.0);
  CHECK(!flat.flag("ratio_defined"));

  FieldParams p;
  p.sigma = 1.0 / 8.0;
  const ScalarField gauss = make_test_field(FieldKind::gauss_bump, g, p, 0);
  const Report r = capacity::coarea_tv(gauss, 64);
  CHECK(r.flag("ratio_defined"));
  CHECK(r.number("ratio") == doctest::Approx(1.0).epsilon(0.05));

  CHECK_THROWS_AS(capacity::coarea_tv(gauss, 4), ValidationError);
}

TEST_CASE("coarea on the interior ramp matches the plane-area oracle") {
  // f = x0 on a plateau window: the gradient TV is the plateau area and
  // each level line is a plateau-width segment; both estimators agree.
  const GridSpec g = GridSpec::square(2, 128, 1.0 / 128);
  ScalarField f(g);
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    const Index3 iv = g.unindex(i);
    const double x = g.h * iv[0], y = g.h * iv[1];
    const double wx = smooth_step((x - 0.1) / 0.1) * smooth_step((0.9 - x) / 0.1);
    const double wy = smooth_step((y - 0.1) / 0.1) * smooth_step((0.9 - y) / 0.1);
    f.samples[i] = x * wx * wy;
  }
  const Report r = capacity::coarea_tv(f, 64);
  CHECK(r.number("ratio") == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("coarea smoke test in d = 3") {
  const GridSpec g = GridSpec::square(3, 32, 1.0 / 32);
  FieldParams p;
  p.sigma = 1.0 / 8.0;
  const ScalarField gauss = make_test_field(FieldKind::gauss_bump, g, p, 0);
  const Report r = capacity::coarea_tv(gauss, 32);
  CHECK(r.number("ratio") == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("boxing check: disk, annulus and thin bar stay bounded") {
  const GridSpec g = GridSpec::square(2, 128, 1.0 / 128);

  FieldParams p;
  p.radius = 0.25;
  p.transition = 0.03;
  const ScalarField disk = make_test_field(FieldKind::smoothed_disk, g, p, 0);
  const Report rd = capacity::boxing_check(disk, 0.5);
  // One near-optimal ball wins: content ~ R + h, boundary ~ 2 pi R.
  CHECK(rd.number("content") <= 1.3 * 0.25);
  CHECK(rd.number("boundary") == doctest::Approx(2.0 * std::numbers::pi * 0.25).epsilon(0.02));
  CHECK(rd.number("ratio") == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(0.3));

  p = {};
  p.radius = 0.25;
  p.inner_radius = 0.125;
  p.transition = 0.03;
  const ScalarField annulus = make_test_field(FieldKind::annulus, g, p, 0);
  const Report ra = capacity::boxing_check(annulus, 0.5);
  // Candidates sit on the annulus itself, so the cheapest single cover ball
  // has dyadic radius 2R; the boundary is the two circles.
  CHECK(ra.number("content") <= 2.0 * 0.25 + 2.0 * g.h + 1e-12);
  CHECK(ra.number("boundary") ==
        doctest::Approx(2.0 * std::numbers::pi * (0.25 + 0.125)).epsilon(0.03));
  CHECK(ra.number("ratio") < 0.5);

  // Thin bar half-widths 8h x 64h: a hand cover by five radius-8h balls
  // bounds the greedy cost within its approximation factor.
  ScalarField bar(g);
  for (std::size_t i = 0; i < bar.samples.size(); ++i) {
    const Index3 iv = g.unindex(i);
    const double x = g.h * iv[0] - 0.5, y = g.h * iv[1] - 0.5;
    bar.samples[i] = smooth_step((8.0 * g.h + 0.015 - std::abs(x)) / 0.03) *
                     smooth_step((64.0 * g.h + 0.015 - std::abs(y)) / 0.03);
  }
  const Report rb = capacity::boxing_check(bar, 0.5);
  CHECK(rb.number("content") <= 2.0 * (5.0 * 8.0 * g.h));
  CHECK(rb.number("ratio") < 0.5);

  const Report empty = capacity::boxing_check(disk, 2.0);
  CHECK(empty.number("content") == 0.0);
  CHECK(!empty.flag("ratio_defined"));
}

TEST_CASE("scale covariance: doubling the shape doubles content and boundary") {
  FieldParams p;
  p.radius = 0.15;
  p.transition = 0.04;
  const GridSpec g1 = GridSpec::square(2, 64, 1.0 / 64);
  const GridSpec g2 = GridSpec::square(2, 128, 1.0 / 64);  // doubled domain, same h
  const ScalarField small = make_test_field(FieldKind::smoothed_disk, g1, p, 0);
  const ScalarField large = make_test_field(FieldKind::smoothed_disk, g2, p, 0);

  const Report r1 = capacity::boxing_check(small, 0.5);
  const Report r2 = capacity::boxing_check(large, 0.5);
  CHECK(r2.number("content") / r1.number("content") == doctest::Approx(2.0).epsilon(0.15));
  CHECK(r2.number("boundary") / r1.number("boundary") == doctest::Approx(2.0).epsilon(0.05));
}
