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

#include "doro/dorronsoro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "doro/corpus.hpp"
#include "doro/error.hpp"
#include "doro/maximal.hpp"

namespace doro::dorronsoro {

using spectral::PaddedGrid;
using spectral::SpectralConfig;

void HatSpec::validate() const {
  if (!(transition_width > 0.0 && transition_width <= 1.0)) {
    throw ConfigError("hat transition width must lie in (0, 1]");
  }
}

namespace {

double hat_profile(double rho, double R, double w) {
  if (rho <= R) return 1.0;
  const double support = R * (1.0 + w);
  if (rho >= support) return 0.0;
  return smooth_step((support - rho) / (R * w));
}

// Adds scale * theta_{R,w}(. - center) to a padded accumulator and returns
// the added sample sum. Coordinates are padded-domain coordinates.
double add_hat(std::vector<double>& acc, const GridSpec& padded, const Point3& center, double R,
               double w, double scale) {
  const double support = R * (1.0 + w);
  Index3 lo{0, 0, 0}, hi{0, 0, 0};
  for (int a = 0; a < padded.d; ++a) {
    lo[a] = std::max(0, static_cast<int>(std::ceil((center[a] - support) / padded.h)));
    hi[a] = std::min(padded.dims[a] - 1,
                     static_cast<int>(std::floor((center[a] + support) / padded.h)));
  }
  double added = 0.0;
  const int k2lo = padded.d == 3 ? lo[2] : 0;
  const int k2hi = padded.d == 3 ? hi[2] : 0;
  for (int i0 = lo[0]; i0 <= hi[0]; ++i0) {
    const double dx0 = padded.h * i0 - center[0];
    for (int i1 = lo[1]; i1 <= hi[1]; ++i1) {
      const double dx1 = padded.h * i1 - center[1];
      for (int i2 = k2lo; i2 <= k2hi; ++i2) {
        const double dx2 = padded.d == 3 ? padded.h * i2 - center[2] : 0.0;
        const double rho = std::sqrt(dx0 * dx0 + dx1 * dx1 + dx2 * dx2);
        const double v = hat_profile(rho, R, w);
        if (v > 0.0) {
          acc[padded.index({i0, i1, i2})] += scale * v;
          added += scale * v;
        }
      }
    }
  }
  return added;
}

double padded_boundary_distance(const Point3& p, const GridSpec& padded) {
  double dist = std::numeric_limits<double>::infinity();
  for (int a = 0; a < padded.d; ++a) {
    dist = std::min(dist, std::min(p[a], padded.extent(a) - p[a]));
  }
  return dist;
}

// Shrinks the transition width until the inflated hat fits the padded box
// with a 4h margin; below 0.25 the ball is rejected.
double fit_transition(double R, const Point3& center_padded, const GridSpec& padded,
                      double requested_w) {
  const double room = padded_boundary_distance(center_padded, padded) - 4.0 * padded.h;
  const double max_w = room / R - 1.0;
  if (max_w < 0.25) {
    throw ValidationError("cover ball of radius " + std::to_string(R) +
                          " cannot host a hat inside the padded domain");
  }
  return std::min(requested_w, max_w);
}

Point3 to_padded_coords(const Point3& window_coords, const GridSpec& window, const PaddedGrid& pg) {
  Point3 p = window_coords;
  for (int a = 0; a < window.d; ++a) {
    p[a] += pg.padded.h * pg.offset[a] - window.origin[a];
  }
  return p;
}

// The field whose Riesz potential reproduces the accumulated hat sum on the
// window: the window restriction of I_1 is positive definite, so the
// preimage exists, is unique and is window-supported by construction.
ScalarField potential_inverse_of_hats(const std::vector<double>& hat_sum, const GridSpec& window,
                                      const PaddedGrid& pg) {
  const ScalarField target = spectral::restrict_to_window(hat_sum, window, pg);
  return spectral::riesz_window_inverse(target, SpectralConfig{pg.padded.dims[0] / window.dims[0]});
}

}  // namespace

ScalarField hat_function(double R, const Point3& center, const GridSpec& grid,
                         const HatSpec& spec) {
  grid.validate();
  spec.validate();
  if (!(R > 0.0)) throw ValidationError("hat radius must be positive");
  const double support = R * (1.0 + spec.transition_width);
  for (int a = 0; a < grid.d; ++a) {
    const double rel = center[a] - grid.origin[a];
    if (rel - support < 4.0 * grid.h || rel + support > grid.extent(a) - 4.0 * grid.h) {
      throw ValidationError("hat support escapes the grid interior (needs a 4h margin)");
    }
  }
  ScalarField out(grid);
  Point3 rel = center;
  for (int a = 0; a < grid.d; ++a) rel[a] -= grid.origin[a];
  add_hat(out.samples, grid, rel, R, spec.transition_width, 1.0);
  return out;
}

ScalarField make_atom(double R, const Point3& center, const GridSpec& grid, const HatSpec& spec,
                      const SpectralConfig& cfg) {
  grid.validate();
  spec.validate();
  cfg.validate();
  if (!(R > 0.0)) throw ValidationError("atom radius must be positive");
  const PaddedGrid pg = spectral::make_padded_grid(grid, cfg);
  const Point3 c = to_padded_coords(center, grid, pg);
  const double w = fit_transition(R, c, pg.padded, spec.transition_width);

  std::vector<double> hats(pg.padded.node_count(), 0.0);
  add_hat(hats, pg.padded, c, R, w, 1.0);
  return potential_inverse_of_hats(hats, grid, pg);
}

Report decay_check(double R, const GridSpec& grid, const HatSpec& spec,
                   const SpectralConfig& cfg) {
  grid.validate();
  // The envelope is measured out to 8R, so the window corner must reach it.
  double corner_sq = 0.0;
  for (int a = 0; a < grid.d; ++a) {
    const double half = grid.extent(a) / 2.0;
    corner_sq += half * half;
  }
  if (std::sqrt(corner_sq) < 8.0 * R) {
    throw ValidationError("grid too small for the decay envelope: needs |x| up to 8R");
  }

  const auto envelope_sup = [&](const GridSpec& g) {
    Point3 center{0.0, 0.0, 0.0};
    for (int a = 0; a < g.d; ++a) center[a] = g.origin[a] + g.extent(a) / 2.0;
    const ScalarField atom = make_atom(R, center, g, spec, cfg);
    double sup = 0.0;
    for (std::size_t i = 0; i < atom.samples.size(); ++i) {
      const Index3 iv = g.unindex(i);
      double sq = 0.0;
      for (int a = 0; a < g.d; ++a) {
        const double dx = g.origin[a] + g.h * iv[a] - center[a];
        sq += dx * dx;
      }
      const double rho = std::sqrt(sq);
      if (rho < 2.0 * R || rho > 8.0 * R) continue;
      // theta_R is R^d times the mass-normalized dilation, so dividing by
      // R^d makes the envelope constant uniform in R.
      sup = std::max(sup,
                     std::abs(atom.samples[i]) * std::pow(R + rho, g.d + 1) / std::pow(R, g.d));
    }
    return sup;
  };

  GridSpec fine = grid;
  fine.h = grid.h / 2.0;
  for (int a = 0; a < grid.d; ++a) fine.dims[a] = grid.dims[a] * 2;

  Report report;
  const double coarse_sup = envelope_sup(grid);
  const double fine_sup = envelope_sup(fine);
  report.set("envelope_sup", coarse_sup);
  report.set("envelope_sup_fine", fine_sup);
  report.set_ratio("resolution_ratio", fine_sup, coarse_sup);
  const bool stable = coarse_sup > 0.0 && fine_sup > 0.0 &&
                      fine_sup / coarse_sup < 2.0 && coarse_sup / fine_sup < 2.0;
  report.set("resolution_stable_pass", stable);
  return report;
}

Report atom_identity_check(double R, const Point3& center, const GridSpec& grid,
                           const HatSpec& spec, const SpectralConfig& cfg) {
  grid.validate();
  spec.validate();
  cfg.validate();
  const PaddedGrid pg = spectral::make_padded_grid(grid, cfg);
  const Point3 c = to_padded_coords(center, grid, pg);
  const double w = fit_transition(R, c, pg.padded, spec.transition_width);

  const ScalarField atom = make_atom(R, center, grid, spec, cfg);
  const ScalarField potential = spectral::riesz_potential(atom, 1.0, cfg);

  double sup_error = 0.0;
  double domination = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < potential.samples.size(); ++i) {
    const Index3 iv = grid.unindex(i);
    double sq = 0.0;
    for (int a = 0; a < grid.d; ++a) {
      const double dx = grid.origin[a] + grid.h * iv[a] - center[a];
      sq += dx * dx;
    }
    const double rho = std::sqrt(sq);
    sup_error = std::max(sup_error, std::abs(potential.samples[i] - hat_profile(rho, R, w)));
    const double indicator = rho <= R ? 1.0 : 0.0;
    domination = std::min(domination, potential.samples[i] - indicator);
  }
  Report report;
  report.set("identity_sup_error", sup_error);
  report.set("domination_min", domination);
  return report;
}

std::pair<ScalarField, capacity::BallCover> set_majorant(const BinaryMask& mask,
                                                         const HatSpec& spec,
                                                         const SpectralConfig& cfg) {
  mask.validate();
  spec.validate();
  cfg.validate();
  if (mask.count_true() == 0) throw ValidationError("set_majorant needs a non-empty mask");

  const GridSpec& window = mask.grid;
  const PaddedGrid pg = spectral::make_padded_grid(window, cfg);

  // Only balls whose hat (at the minimum transition 0.25) fits the padded
  // box are admissible cover candidates.
  const auto admissible = [&](const Point3& center, double r) {
    const Point3 c = to_padded_coords(center, window, pg);
    return r * 1.25 + 4.0 * pg.padded.h <= padded_boundary_distance(c, pg.padded);
  };
  capacity::BallCover cover =
      capacity::hausdorff_content(mask, double(window.d - 1), admissible);

  std::vector<double> hats(pg.padded.node_count(), 0.0);
  for (const capacity::Ball& b : cover.balls) {
    const Point3 c = to_padded_coords(b.center, window, pg);
    const double w = fit_transition(b.radius, c, pg.padded, spec.transition_width);
    add_hat(hats, pg.padded, c, b.radius, w, 1.0);
  }
  ScalarField omega = potential_inverse_of_hats(hats, window, pg);
  return {std::move(omega), std::move(cover)};
}

namespace {

void require_decomposable(const ScalarField& f) {
  f.validate();
  const GridSpec& g = f.grid;
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    if (f.samples[i] < 0.0) {
      throw ValidationError(
          "decompose requires a non-negative field: split f = f_pos - f_neg and decompose the "
          "positive part f_pos = max(f, 0)");
    }
    if (f.samples[i] != 0.0 && g.boundary_distance(g.unindex(i)) < 4.0 * g.h) {
      throw ValidationError("decompose requires compact support inside the 4h boundary frame");
    }
  }
}

}  // namespace

DecompositionResult decompose(const ScalarField& f, int n_levels, const HatSpec& spec,
                              const SpectralConfig& cfg) {
  if (n_levels < 8) throw ValidationError("decompose needs at least 8 levels");
  require_decomposable(f);
  spec.validate();
  cfg.validate();

  const GridSpec& window = f.grid;
  DecompositionResult result;
  result.F = ScalarField(window);

  const double fmax = *std::max_element(f.samples.begin(), f.samples.end());
  if (fmax == 0.0) return result;

  const PaddedGrid pg = spectral::make_padded_grid(window, cfg);
  const auto admissible = [&](const Point3& center, double r) {
    const Point3 c = to_padded_coords(center, window, pg);
    return r * 1.25 + 4.0 * pg.padded.h <= padded_boundary_distance(c, pg.padded);
  };

  const double delta = fmax / n_levels;
  result.delta = delta;

  std::vector<double> hats(pg.padded.node_count(), 0.0);
  for (int j = 0; j < n_levels; ++j) {
    const double level = j * delta;
    const BinaryMask mask = capacity::superlevel_set(f, level);
    if (mask.count_true() == 0) continue;
    capacity::BallCover cover =
        capacity::hausdorff_content(mask, double(window.d - 1), admissible);
    for (const capacity::Ball& b : cover.balls) {
      const Point3 c = to_padded_coords(b.center, window, pg);
      const double w = fit_transition(b.radius, c, pg.padded, spec.transition_width);
      add_hat(hats, pg.padded, c, b.radius, w, delta);
    }
    result.levels.push_back({level, std::move(cover)});
  }

  result.F = potential_inverse_of_hats(hats, window, pg);

  const ScalarField potential = spectral::riesz_potential(result.F, 1.0, cfg);
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    margin = std::min(margin, potential.samples[i] - f.samples[i]);
  }
  result.domination_margin = margin;
  result.tv = grid_integral(spectral::gradient(f), 1.0);
  result.h1_estimate = maximal::h1_norm(result.F, maximal::MaximalConfig::for_grid(window), cfg);
  result.ratio = result.tv > 0.0 ? result.h1_estimate / result.tv : 0.0;
  return result;
}

Report verify_decomposition(const ScalarField& f, const DecompositionResult& result,
                            const SpectralConfig& cfg) {
  f.validate();
  result.F.validate();
  if (!f.grid.same_layout(result.F.grid)) {
    throw ValidationError("verify_decomposition: field and decomposition grids do not match");
  }

  const ScalarField potential = spectral::riesz_potential(result.F, 1.0, cfg);
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    margin = std::min(margin, potential.samples[i] - f.samples[i]);
  }

  const double tolerance = result.delta + 1e-6;
  const double tv = grid_integral(spectral::gradient(f), 1.0);
  const double h1 = maximal::h1_norm(result.F, maximal::MaximalConfig::for_grid(f.grid), cfg);

  double level_content_sum = 0.0;
  for (const LevelCover& lc : result.levels) level_content_sum += result.delta * lc.cover.cost;
  const double base_content = result.levels.empty() ? 0.0 : result.levels.front().cover.cost;

  Report report;
  report.set("margin", margin);
  report.set("margin_tolerance", tolerance);
  report.set("margin_pass", margin >= -tolerance);
  report.set("h1_estimate", h1);
  report.set("tv", tv);
  report.set_ratio("h1_tv_ratio", h1, tv);
  report.set("level_content_sum", level_content_sum);
  report.set_ratio("gustin_ratio", level_content_sum, tv + result.delta * base_content);
  return report;
}

}  // namespace doro::dorronsoro
