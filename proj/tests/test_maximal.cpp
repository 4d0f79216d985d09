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

#include "doro/corpus.hpp"
#include "doro/error.hpp"
#include "doro/grid.hpp"
#include "doro/maximal.hpp"
#include "doro/spectral.hpp"

using namespace doro;
using maximal::MaximalConfig;

TEST_CASE("maximal config builds the dyadic ladder up to L/4") {
  const GridSpec g = GridSpec::square(2, 32, 1.0 / 32);
  const MaximalConfig cfg = MaximalConfig::for_grid(g);
  REQUIRE(cfg.scales.size() == 4);  // h, 2h, 4h, 8h = L/4
  CHECK(cfg.scales.front() == doctest::Approx(g.h));
  CHECK(cfg.scales.back() == doctest::Approx(0.25));
  MaximalConfig bad = cfg;
  bad.scales.clear();
  CHECK_THROWS_AS(bad.validate(g), ConfigError);
  bad = cfg;
  bad.scales.push_back(0.5);  // beyond L/4
  CHECK_THROWS_AS(bad.validate(g), ConfigError);
}

TEST_CASE("h1 norm: zero field, homogeneity and translation stability") {
  const GridSpec g = GridSpec::square(2, 64, 1.0 / 64);
  const MaximalConfig cfg = MaximalConfig::for_grid(g);
  CHECK(maximal::h1_norm(ScalarField(g), cfg) == 0.0);

  FieldParams p;
  p.sigma = 0.07;
  p.separation = 0.3;
  p.signed_pair = true;
  const ScalarField f = make_test_field(FieldKind::two_bumps, g, p, 0);
  const double base = maximal::h1_norm(f, cfg);

  ScalarField scaled = f;
  for (double& v : scaled.samples) v *= -2.5;
  CHECK(maximal::h1_norm(scaled, cfg) == doctest::Approx(2.5 * base).epsilon(1e-10));

  // Whole-grid shift away from the boundary moves the norm by < 2%.
  ScalarField shifted(g);
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 61; ++j) {
      shifted.at({i, j + 3, 0}) = f.at({i, j, 0});
    }
  }
  CHECK(maximal::h1_norm(shifted, cfg) == doctest::Approx(base).epsilon(0.02));
}

TEST_CASE("h1 norm dominates the L1 norm via the smallest scale") {
  // Small-t oracle: at t = h the mollifier is near-delta, so the maximal
  // field dominates |f * psi_h| whose L1 norm is within 2% of ||f||_1 for
  // two distant smooth bumps of opposite sign.
  const GridSpec g = GridSpec::square(2, 64, 1.0 / 64);
  const MaximalConfig cfg = MaximalConfig::for_grid(g);
  FieldParams p;
  p.sigma = 0.08;
  p.separation = 0.4;
  p.signed_pair = true;
  const ScalarField f = make_test_field(FieldKind::two_bumps, g, p, 0);

  const double t = cfg.scales.front();
  const ScalarField smoothed = spectral::apply_multiplier(f, {}, [t](const Point3& xi) {
    return std::exp(-0.5 * t * t * (xi[0] * xi[0] + xi[1] * xi[1]));
  });
  const double l1_smoothed = grid_integral(smoothed, 1.0);
  CHECK(l1_smoothed > 0.98 * grid_integral(f, 1.0));
  CHECK(maximal::h1_norm(f, cfg) >= l1_smoothed * (1.0 - 1e-12));
}

TEST_CASE("h1 norm warns when the mean is far from zero") {
  const GridSpec g = GridSpec::square(2, 32, 1.0 / 32);
  const MaximalConfig cfg = MaximalConfig::for_grid(g);
  const ScalarField bump = make_test_field(FieldKind::gauss_bump, g, {}, 0);
  Report warnings;
  maximal::h1_norm(bump, cfg, {}, &warnings);
  CHECK(warnings.has("h1_mean_zero_warning"));
}

TEST_CASE("bmo norm: constants, shifts and scaling") {
  const GridSpec g = GridSpec::square(2, 32, 1.0 / 32);
  const MaximalConfig cfg = MaximalConfig::for_grid(g);
  CHECK(maximal::bmo_norm(ScalarField(g, 7.0), cfg) == 0.0);

  const ScalarField f = make_test_field(FieldKind::random_smooth, g, {}, 17);
  const double base = maximal::bmo_norm(f, cfg);
  ScalarField shifted = f;
  for (double& v : shifted.samples) v += 123.0;
  CHECK(maximal::bmo_norm(shifted, cfg) == doctest::Approx(base).epsilon(1e-9));

  ScalarField scaled = f;
  for (double& v : scaled.samples) v *= -4.0;
  CHECK(maximal::bmo_norm(scaled, cfg) == doctest::Approx(4.0 * base).epsilon(1e-12));
}

TEST_CASE("bmo norm of the checkerboard matches the enumeration oracle") {
  const GridSpec g = GridSpec::square(2, 8, 1.0 / 8);
  ScalarField f(g);
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    const Index3 iv = g.unindex(i);
    f.samples[i] = ((iv[0] + iv[1]) % 2 == 0) ? 1.0 : -1.0;
  }
  const MaximalConfig cfg = MaximalConfig::for_grid(g);
  const double got = maximal::bmo_norm(f, cfg);

  // Brute-force oracle over the same window lattice.
  double oracle = 0.0;
  for (double r : cfg.radii) {
    const int side = static_cast<int>(std::round(r / g.h));
    const int stride = std::max(1, side / 2);
    for (int i0 = 0; i0 + side <= 8; i0 += stride) {
      for (int j0 = 0; j0 + side <= 8; j0 += stride) {
        double mean = 0.0;
        for (int i = i0; i < i0 + side; ++i) {
          for (int j = j0; j < j0 + side; ++j) mean += f.at({i, j, 0});
        }
        mean /= side * side;
        double dev = 0.0;
        for (int i = i0; i < i0 + side; ++i) {
          for (int j = j0; j < j0 + side; ++j) dev += std::abs(f.at({i, j, 0}) - mean);
        }
        oracle = std::max(oracle, dev / (side * side));
      }
    }
  }
  CHECK(got == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(got == doctest::Approx(1.0).epsilon(0.1));  // oscillation saturates at the amplitude
}

TEST_CASE("fractional maximal: single atom, uniform density, monotone, homogeneous") {
  const GridSpec g = GridSpec::square(2, 32, 1.0 / 32);
  const MaximalConfig cfg = MaximalConfig::for_grid(g);

  DiscreteMeasure atom(g);
  atom.masses[g.index({16, 16, 0})] = 1.0;
  const ScalarField m1 = maximal::fractional_maximal(atom, 1.0, cfg);
  CHECK(m1.at({16, 16, 0}) == doctest::Approx(1.0 / g.h).epsilon(1e-12));

  // Uniform density rho per unit area: M_0 equals rho times the exact
  // stencil count over (r/h)^2; the count oracle is recomputed here.
  const double rho = 3.0;
  DiscreteMeasure uniform(g);
  for (double& m : uniform.masses) m = rho * g.h * g.h;
  const ScalarField m0 = maximal::fractional_maximal(uniform, 0.0, cfg);
  double best = 0.0;
  for (double r : cfg.radii) {
    const int reach = static_cast<int>(std::floor(r / g.h + 1e-12));
    std::size_t count = 0;
    for (int a = -reach; a <= reach; ++a) {
      for (int b = -reach; b <= reach; ++b) {
        if (double(a) * a + double(b) * b <= (r / g.h) * (r / g.h) * (1 + 1e-12)) ++count;
      }
    }
    best = std::max(best, std::pow(r, -2.0) * count * rho * g.h * g.h);
  }
  CHECK(m0.at({16, 16, 0}) == doctest::Approx(best).epsilon(1e-12));
  // Against the ball-volume normalization pi r^2 the per-radius value is
  // rho once the stencil resolves the disk (the largest radius here).
  {
    const double r = cfg.radii.back();
    const int reach = static_cast<int>(std::floor(r / g.h + 1e-12));
    std::size_t count = 0;
    for (int a = -reach; a <= reach; ++a) {
      for (int b = -reach; b <= reach; ++b) {
        if (double(a) * a + double(b) * b <= (r / g.h) * (r / g.h) * (1 + 1e-12)) ++count;
      }
    }
    const double value = std::pow(r, -2.0) * count * rho * g.h * g.h;
    CHECK(value / std::numbers::pi == doctest::Approx(rho).epsilon(0.05));
  }

  // Monotonicity, exactly.
  DiscreteMeasure bigger = atom;
  bigger.masses[g.index({10, 20, 0})] = 0.7;
  const ScalarField m_bigger = maximal::fractional_maximal(bigger, 1.0, cfg);
  for (std::size_t i = 0; i < m1.samples.size(); ++i) {
    CHECK(m_bigger.samples[i] >= m1.samples[i]);
  }

  // Doubling the measure doubles the maximal function pointwise.
  DiscreteMeasure doubled = bigger;
  for (double& m : doubled.masses) m *= 2.0;
  const ScalarField m_doubled = maximal::fractional_maximal(doubled, 1.0, cfg);
  for (std::size_t i = 0; i < m_bigger.samples.size(); ++i) {
    CHECK(m_doubled.samples[i] == doctest::Approx(2.0 * m_bigger.samples[i]).epsilon(1e-12));
  }

  CHECK_THROWS_AS(maximal::fractional_maximal(atom, 2.0, cfg), DomainError);
  DiscreteMeasure negative = atom;
  negative.masses[0] = -1.0;
  CHECK_THROWS_AS(maximal::fractional_maximal(negative, 1.0, cfg), ValidationError);
}

TEST_CASE("lorentz norm: single layer, homogeneity, layer-cake oracle") {
  const GridSpec g = GridSpec::square(2, 128, 1.0 / 128);

  ScalarField ind(g);
  for (int k = 0; k < 25; ++k) ind.samples[2000 + 17 * k] = 1.0;
  CHECK(maximal::lorentz_norm(ind, 2.0) ==
        doctest::Approx(std::sqrt(25.0 * g.h * g.h)).epsilon(1e-12));

  FieldParams p;
  p.radius = 0.3;
  p.transition = 0.04;
  const ScalarField disk = make_test_field(FieldKind::smoothed_disk, g, p, 0);
  const double base = maximal::lorentz_norm(disk, 2.0);

  ScalarField scaled = disk;
  for (double& v : scaled.samples) v *= -7.0;
  CHECK(maximal::lorentz_norm(scaled, 2.0) == doctest::Approx(7.0 * base).epsilon(1e-12));

  // Layer-cake quadrature oracle with 1000 explicit levels.
  const double top = grid_sup_norm(disk);
  const int levels = 1000;
  const double dt = top / levels;
  double oracle = 0.0;
  for (int k = 0; k < levels; ++k) {
    const double t = (k + 0.5) * dt;
    std::size_t count = 0;
    for (double v : disk.samples) count += std::abs(v) > t;
    oracle += std::sqrt(count * g.h * g.h) * dt;
  }
  CHECK(base == doctest::Approx(oracle).epsilon(0.005));

  // Near-indicator of a disk: close to sqrt(pi R^2).
  CHECK(base == doctest::Approx(std::sqrt(std::numbers::pi * 0.09)).epsilon(0.05));

  CHECK_THROWS_AS(maximal::lorentz_norm(disk, 1.0), DomainError);
}

TEST_CASE("adams check: degenerate, single atom, joint homogeneity") {
  const GridSpec g = GridSpec::square(2, 64, 1.0 / 64);
  const MaximalConfig cfg = MaximalConfig::for_grid(g);
  const spectral::SpectralConfig scfg{4};

  const Report empty = maximal::adams_check(DiscreteMeasure(g), 1.0, cfg, scfg);
  CHECK(empty.number("bmo_of_riesz") == 0.0);
  CHECK(empty.number("max_frac_maximal") == 0.0);
  CHECK(!empty.flag("ratio_upper_defined"));
  CHECK(!empty.flag("ratio_lower_defined"));

  DiscreteMeasure atom(g);
  atom.masses[g.index({32, 32, 0})] = 1.0;
  const Report single = maximal::adams_check(atom, 1.0, cfg, scfg);
  CHECK(single.flag("ratio_upper_defined"));
  CHECK(single.number("bmo_of_riesz") > 0.0);
  CHECK(single.number("max_frac_maximal") > 0.0);

  DiscreteMeasure scaled = atom;
  scaled.masses[g.index({40, 28, 0})] = 0.5;
  const Report base = maximal::adams_check(scaled, 1.0, cfg, scfg);
  for (double& m : scaled.masses) m *= 10.0;
  const Report big = maximal::adams_check(scaled, 1.0, cfg, scfg);
  CHECK(big.number("bmo_of_riesz") ==
        doctest::Approx(10.0 * base.number("bmo_of_riesz")).epsilon(1e-10));
  CHECK(big.number("ratio_upper") == doctest::Approx(base.number("ratio_upper")).epsilon(1e-10));

  DiscreteMeasure bad(g);
  bad.masses[0] = -0.1;
  CHECK_THROWS_AS(maximal::adams_check(bad, 1.0, cfg, scfg), ValidationError);
}
