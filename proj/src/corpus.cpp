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

#include "doro/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "doro/error.hpp"

namespace doro {

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s);
  const double b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

FieldKind field_kind_from_name(const std::string& name) {
  if (name == "gauss_bump") return FieldKind::gauss_bump;
  if (name == "smoothed_disk") return FieldKind::smoothed_disk;
  if (name == "two_bumps") return FieldKind::two_bumps;
  if (name == "random_smooth") return FieldKind::random_smooth;
  if (name == "annulus") return FieldKind::annulus;
  throw ValidationError("unknown field kind '" + name + "'");
}

std::string field_kind_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::gauss_bump: return "gauss_bump";
    case FieldKind::smoothed_disk: return "smoothed_disk";
    case FieldKind::two_bumps: return "two_bumps";
    case FieldKind::random_smooth: return "random_smooth";
    case FieldKind::annulus: return "annulus";
  }
  throw ValidationError("bad field kind");
}

namespace {

// splitmix64; used instead of <random> distributions so seeded corpora are
// byte-identical across standard libraries.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Per-axis cutoff that is exactly zero on the 4h boundary frame and one on
// the interior plateau.
struct Window {
  double h4, rise, extent;
  double operator()(double x) const {
    return smooth_step((x - h4) / rise) * smooth_step((extent - h4 - x) / rise);
  }
};

Window make_window(const GridSpec& grid, int axis) {
  const double h4 = 4.0 * grid.h;
  const double rise = std::max(4.0 * grid.h, grid.extent(axis) / 16.0);
  return Window{h4, rise, grid.extent(axis)};
}

double window_value(const GridSpec& grid, const Index3& iv) {
  double w = 1.0;
  for (int a = 0; a < grid.d; ++a) {
    if (w == 0.0) break;
    w *= make_window(grid, a)(grid.h * iv[a]);
  }
  return w;
}

void check_support(const GridSpec& grid, const Point3& center_rel, double support_rel,
                   const std::string& what) {
  for (int a = 0; a < grid.d; ++a) {
    const double c = center_rel[a];
    if (!(c > 0.0 && c < 1.0)) throw ValidationError(what + ": center must lie inside the domain");
    if (support_rel > std::min(c, 1.0 - c)) {
      throw ValidationError(what + ": support of radius " + std::to_string(support_rel) +
                            " escapes the domain");
    }
  }
  if (support_rel >= 0.5) throw ValidationError(what + ": radius must stay below the domain half-width");
}

// Anisotropic radial distance in relative coordinates: axis 0 stretched by
// `aspect`, so the unit level set is an ellipse with semi-axes (aspect, 1).
double radial(const GridSpec& grid, const Index3& iv, const Point3& center_rel, double aspect) {
  double sq = 0.0;
  for (int a = 0; a < grid.d; ++a) {
    double dx = grid.h * iv[a] / grid.extent(a) - center_rel[a];
    if (a == 0) dx /= aspect;
    sq += dx * dx;
  }
  return std::sqrt(sq);
}

}  // namespace

ScalarField make_test_field(FieldKind kind, const GridSpec& grid, const FieldParams& params,
                            std::uint64_t seed) {
  grid.validate();
  ScalarField f(grid);
  const std::size_t n = grid.node_count();

  switch (kind) {
    case FieldKind::gauss_bump: {
      check_support(grid, params.center, 3.0 * params.sigma, "gauss_bump");
      for (std::size_t i = 0; i < n; ++i) {
        const Index3 iv = grid.unindex(i);
        const double r = radial(grid, iv, params.center, 1.0);
        f.samples[i] = params.amplitude * std::exp(-r * r / (2.0 * params.sigma * params.sigma)) *
                       window_value(grid, iv);
      }
      break;
    }
    case FieldKind::smoothed_disk: {
      const double support = params.aspect * (params.radius + params.transition / 2.0);
      check_support(grid, params.center, support, "smoothed_disk");
      for (std::size_t i = 0; i < n; ++i) {
        const Index3 iv = grid.unindex(i);
        const double r = radial(grid, iv, params.center, params.aspect);
        f.samples[i] = params.amplitude *
                       smooth_step((params.radius + params.transition / 2.0 - r) / params.transition) *
                       window_value(grid, iv);
      }
      break;
    }
    case FieldKind::annulus: {
      if (!(params.inner_radius < params.radius)) {
        throw ValidationError("annulus: inner radius must be below the outer radius");
      }
      check_support(grid, params.center, params.radius + params.transition / 2.0, "annulus");
      for (std::size_t i = 0; i < n; ++i) {
        const Index3 iv = grid.unindex(i);
        const double r = radial(grid, iv, params.center, 1.0);
        const double outer =
            smooth_step((params.radius + params.transition / 2.0 - r) / params.transition);
        const double inner =
            smooth_step((r - params.inner_radius + params.transition / 2.0) / params.transition);
        f.samples[i] = params.amplitude * outer * inner * window_value(grid, iv);
      }
      break;
    }
    case FieldKind::two_bumps: {
      Point3 c1 = params.center, c2 = params.center;
      c1[0] -= params.separation / 2.0;
      c2[0] += params.separation / 2.0;
      check_support(grid, c1, 3.0 * params.sigma, "two_bumps");
      check_support(grid, c2, 3.0 * params.sigma, "two_bumps");
      const double s2 = 2.0 * params.sigma * params.sigma;
      for (std::size_t i = 0; i < n; ++i) {
        const Index3 iv = grid.unindex(i);
        const double r1 = radial(grid, iv, c1, 1.0);
        const double r2 = radial(grid, iv, c2, 1.0);
        const double sign2 = params.signed_pair ? -1.0 : 1.0;
        f.samples[i] = params.amplitude *
                       (std::exp(-r1 * r1 / s2) + sign2 * std::exp(-r2 * r2 / s2)) *
                       window_value(grid, iv);
      }
      break;
    }
    case FieldKind::random_smooth: {
      const int K = std::max(1, params.modes);
      struct Mode {
        double k[3];
        double amp, phase;
      };
      std::vector<Mode> modes;
      Rng rng(seed * 0x9e3779b97f4a7c15ULL + 0x8d5cf2b9ULL);
      for (int k0 = 0; k0 <= K; ++k0) {
        for (int k1 = -K; k1 <= K; ++k1) {
          const int k2lo = grid.d == 3 ? -K : 0;
          const int k2hi = grid.d == 3 ? K : 0;
          for (int k2 = k2lo; k2 <= k2hi; ++k2) {
            if (k0 == 0 && (k1 < 0 || (k1 == 0 && k2 < 0))) continue;  // conjugate duplicates
            if (k0 == 0 && k1 == 0 && k2 == 0) continue;
            const double ksq = double(k0 * k0 + k1 * k1 + k2 * k2);
            Mode m;
            m.k[0] = k0;
            m.k[1] = k1;
            m.k[2] = k2;
            m.amp = (2.0 * rng.u01() - 1.0) / (1.0 + ksq);
            m.phase = 2.0 * std::numbers::pi * rng.u01();
            modes.push_back(m);
          }
        }
      }
      double lo = 0.0;
      std::vector<double> raw(n);
      for (std::size_t i = 0; i < n; ++i) {
        const Index3 iv = grid.unindex(i);
        double v = 0.0;
        for (const Mode& m : modes) {
          double ph = m.phase;
          for (int a = 0; a < grid.d; ++a) {
            ph += 2.0 * std::numbers::pi * m.k[a] * (grid.h * iv[a]) / grid.extent(a);
          }
          v += m.amp * std::cos(ph);
        }
        raw[i] = v;
        lo = std::min(lo, v);
      }
      double hi = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const Index3 iv = grid.unindex(i);
        f.samples[i] = (raw[i] - lo) * window_value(grid, iv);
        hi = std::max(hi, f.samples[i]);
      }
      if (hi > 0.0) {
        const double scale = params.amplitude / hi;
        for (double& v : f.samples) v *= scale;
      }
      break;
    }
  }
  return f;
}

std::vector<NamedField> standard_corpus(int resolution) {
  const GridSpec grid = GridSpec::square(2, resolution, 1.0 / resolution);
  std::vector<NamedField> corpus;
  auto add = [&](const std::string& name, FieldKind kind, const FieldParams& p, std::uint64_t seed) {
    corpus.push_back({name, make_test_field(kind, grid, p, seed)});
  };

  FieldParams p;
  p.sigma = 1.0 / 16.0;
  add("gauss_s16", FieldKind::gauss_bump, p, 0);

  p = {};
  p.sigma = 1.0 / 12.0;
  p.center = {0.42, 0.56, 0.5};
  add("gauss_off", FieldKind::gauss_bump, p, 0);

  p = {};
  p.sigma = 1.0 / 8.0;
  add("gauss_wide", FieldKind::gauss_bump, p, 0);

  p = {};
  p.radius = 0.20;
  p.transition = 0.06;
  add("disk_small", FieldKind::smoothed_disk, p, 0);

  p = {};
  p.radius = 0.30;
  p.transition = 0.04;
  add("disk_large", FieldKind::smoothed_disk, p, 0);

  p = {};
  p.radius = 0.20;
  p.transition = 0.05;
  p.aspect = 1.6;
  add("ellipse", FieldKind::smoothed_disk, p, 0);

  p = {};
  p.radius = 0.30;
  p.inner_radius = 0.16;
  p.transition = 0.05;
  add("annulus", FieldKind::annulus, p, 0);

  p = {};
  p.sigma = 1.0 / 14.0;
  p.separation = 0.40;
  add("two_bumps", FieldKind::two_bumps, p, 0);

  p = {};
  p.modes = 3;
  add("random_a", FieldKind::random_smooth, p, 7);

  p = {};
  p.modes = 2;
  add("random_b", FieldKind::random_smooth, p, 11);

  return corpus;
}

std::vector<NamedField> lorentz_corpus(int resolution) {
  std::vector<NamedField> corpus = standard_corpus(resolution);
  const GridSpec grid = GridSpec::square(2, resolution, 1.0 / resolution);
  for (int cells : {2, 4, 8}) {
    FieldParams p;
    p.radius = 0.25;
    p.transition = double(cells) / resolution;
    corpus.push_back({"near_indicator_" + std::to_string(cells) + "h",
                      make_test_field(FieldKind::smoothed_disk, grid, p, 0)});
  }
  return corpus;
}

std::vector<ShapeCase> boxing_shape_corpus(int resolution) {
  const GridSpec grid = GridSpec::square(2, resolution, 1.0 / resolution);
  std::vector<ShapeCase> cases;

  for (int s = 1; s <= 2; ++s) {
    const std::string suffix = "_x" + std::to_string(s);

    FieldParams p;
    p.radius = 0.14 * s;
    p.transition = 0.03;
    cases.push_back({"disk" + suffix, make_test_field(FieldKind::smoothed_disk, grid, p, 0), 0.5});

    p = {};
    p.radius = 0.11 * s;
    p.transition = 0.03;
    p.aspect = 1.8;
    cases.push_back({"ellipse" + suffix, make_test_field(FieldKind::smoothed_disk, grid, p, 0), 0.5});

    p = {};
    p.radius = 0.14 * s;
    p.inner_radius = 0.07 * s;
    p.transition = 0.03;
    cases.push_back({"annulus" + suffix, make_test_field(FieldKind::annulus, grid, p, 0), 0.5});

    p = {};
    p.sigma = 0.04 * s;
    p.separation = 0.20 * s;
    cases.push_back({"two_disks" + suffix, make_test_field(FieldKind::two_bumps, grid, p, 0), 0.5});

    // Thin bar: product of two one-dimensional plateaus; not part of the
    // public field families, built directly.
    ScalarField bar(grid);
    const double half_len = 0.20 * s, half_wid = 0.025 * s, edge = 0.02;
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
      const Index3 iv = grid.unindex(i);
      const double x0 = grid.h * iv[0] / grid.extent(0) - 0.5;
      const double x1 = grid.h * iv[1] / grid.extent(1) - 0.5;
      bar.samples[i] = smooth_step((half_wid + edge / 2.0 - std::abs(x0)) / edge) *
                       smooth_step((half_len + edge / 2.0 - std::abs(x1)) / edge) *
                       window_value(grid, iv);
    }
    cases.push_back({"thin_bar" + suffix, std::move(bar), 0.5});
  }
  return cases;
}

}  // namespace doro
