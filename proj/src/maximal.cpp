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

#include "doro/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doro/error.hpp"

namespace doro::maximal {

MaximalConfig MaximalConfig::for_grid(const GridSpec& grid) {
  grid.validate();
  MaximalConfig cfg;
  const int kmax = static_cast<int>(std::round(std::log2(grid.min_dim()))) - 2;
  for (int k = 0; k <= kmax; ++k) {
    cfg.scales.push_back(grid.h * std::pow(2.0, k));
  }
  cfg.radii = cfg.scales;
  return cfg;
}

void MaximalConfig::validate(const GridSpec& grid) const {
  if (scales.empty() || radii.empty()) throw ConfigError("scale/radius lists must be non-empty");
  for (const std::vector<double>* list : {&scales, &radii}) {
    for (std::size_t i = 0; i < list->size(); ++i) {
      if (!((*list)[i] > 0.0)) throw ConfigError("scales and radii must be positive");
      if (i > 0 && !((*list)[i] > (*list)[i - 1])) {
        throw ConfigError("scales and radii must be strictly increasing");
      }
    }
    if (list->back() > grid.min_extent() / 4.0 * (1.0 + 1e-12)) {
      throw ConfigError("largest scale must not exceed a quarter of the domain size");
    }
  }
}

double h1_norm(const ScalarField& f, const MaximalConfig& cfg,
               const spectral::SpectralConfig& scfg, Report* warnings) {
  f.validate();
  cfg.validate(f.grid);
  const double cell = std::pow(f.grid.h, f.grid.d);
  if (warnings != nullptr) {
    double integral = 0.0, l1 = 0.0;
    for (double v : f.samples) {
      integral += v;
      l1 += std::abs(v);
    }
    if (std::abs(integral) > 1e-6 * l1) {
      warnings->set("h1_mean_zero_warning", true);
    }
  }

  // The maximal field lives on the padded domain: the mollifications of a
  // window field spill past the window, and that far mass is part of the
  // L^1 norm (dropping it would break the dilation scaling of wide atoms).
  std::vector<double> maximal_field;
  spectral::PaddedGrid pg;
  for (double t : cfg.scales) {
    // psi_t has Fourier transform exp(-t^2 |xi|^2 / 2) (unit mass => 1 at 0).
    const std::vector<double> conv = spectral::apply_multiplier_padded(
        f, scfg,
        [t](const Point3& xi) {
          const double sq = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
          return std::exp(-0.5 * t * t * sq);
        },
        &pg);
    if (maximal_field.empty()) maximal_field.assign(conv.size(), 0.0);
    for (std::size_t i = 0; i < conv.size(); ++i) {
      maximal_field[i] = std::max(maximal_field[i], std::abs(conv[i]));
    }
  }

  double acc = 0.0;
  for (double v : maximal_field) acc += v;
  return acc * cell;
}

namespace {

// Inclusive prefix sums with a zero guard row per axis; supports d = 2, 3.
struct PrefixSums {
  const GridSpec* grid;
  std::vector<double> table;  // dims (n0+1) x (n1+1) [x (n2+1)]

  explicit PrefixSums(const ScalarField& f) : grid(&f.grid) {
    const int d = grid->d;
    const int n0 = grid->dims[0], n1 = grid->dims[1], n2 = d == 3 ? grid->dims[2] : 1;
    table.assign(static_cast<std::size_t>(n0 + 1) * (n1 + 1) * (d == 3 ? n2 + 1 : 1), 0.0);
    if (d == 2) {
      for (int i = 0; i < n0; ++i) {
        for (int j = 0; j < n1; ++j) {
          at2(i + 1, j + 1) =
              f.samples[std::size_t(i) * n1 + j] + at2(i, j + 1) + at2(i + 1, j) - at2(i, j);
        }
      }
    } else {
      for (int i = 0; i < n0; ++i) {
        for (int j = 0; j < n1; ++j) {
          for (int k = 0; k < n2; ++k) {
            at3(i + 1, j + 1, k + 1) = f.samples[(std::size_t(i) * n1 + j) * n2 + k] +
                                       at3(i, j + 1, k + 1) + at3(i + 1, j, k + 1) +
                                       at3(i + 1, j + 1, k) - at3(i, j, k + 1) - at3(i, j + 1, k) -
                                       at3(i + 1, j, k) + at3(i, j, k);
          }
        }
      }
    }
  }

  double& at2(int i, int j) { return table[std::size_t(i) * (grid->dims[1] + 1) + j]; }
  double at2(int i, int j) const { return table[std::size_t(i) * (grid->dims[1] + 1) + j]; }
  double& at3(int i, int j, int k) {
    return table[(std::size_t(i) * (grid->dims[1] + 1) + j) * (grid->dims[2] + 1) + k];
  }
  double at3(int i, int j, int k) const {
    return table[(std::size_t(i) * (grid->dims[1] + 1) + j) * (grid->dims[2] + 1) + k];
  }

  // Sum over the box [i0, i0+s) x [j0, j0+s) (x [k0, k0+s)).
  double box2(int i0, int j0, int s) const {
    return at2(i0 + s, j0 + s) - at2(i0, j0 + s) - at2(i0 + s, j0) + at2(i0, j0);
  }
  double box3(int i0, int j0, int k0, int s) const {
    return at3(i0 + s, j0 + s, k0 + s) - at3(i0, j0 + s, k0 + s) - at3(i0 + s, j0, k0 + s) -
           at3(i0 + s, j0 + s, k0) + at3(i0, j0, k0 + s) + at3(i0, j0 + s, k0) +
           at3(i0 + s, j0, k0) - at3(i0, j0, k0);
  }
};

}  // namespace

double bmo_norm(const ScalarField& f, const MaximalConfig& cfg) {
  f.validate();
  cfg.validate(f.grid);
  const GridSpec& g = f.grid;
  const PrefixSums sums(f);
  double worst = 0.0;

  for (double r : cfg.radii) {
    const int side = std::max(1, static_cast<int>(std::round(r / g.h)));
    if (side > g.min_dim()) continue;
    const int stride = std::max(1, side / 2);
    if (g.d == 2) {
      const double count = double(side) * side;
      for (int i0 = 0; i0 + side <= g.dims[0]; i0 += stride) {
        for (int j0 = 0; j0 + side <= g.dims[1]; j0 += stride) {
          const double mean = sums.box2(i0, j0, side) / count;
          double dev = 0.0;
          for (int i = i0; i < i0 + side; ++i) {
            const double* row = f.samples.data() + std::size_t(i) * g.dims[1];
            for (int j = j0; j < j0 + side; ++j) dev += std::abs(row[j] - mean);
          }
          worst = std::max(worst, dev / count);
        }
      }
    } else {
      const double count = double(side) * side * side;
      for (int i0 = 0; i0 + side <= g.dims[0]; i0 += stride) {
        for (int j0 = 0; j0 + side <= g.dims[1]; j0 += stride) {
          for (int k0 = 0; k0 + side <= g.dims[2]; k0 += stride) {
            const double mean = sums.box3(i0, j0, k0, side) / count;
            double dev = 0.0;
            for (int i = i0; i < i0 + side; ++i) {
              for (int j = j0; j < j0 + side; ++j) {
                const double* row =
                    f.samples.data() + (std::size_t(i) * g.dims[1] + j) * g.dims[2];
                for (int k = k0; k < k0 + side; ++k) dev += std::abs(row[k] - mean);
              }
            }
            worst = std::max(worst, dev / count);
          }
        }
      }
    }
  }
  return worst;
}

ScalarField fractional_maximal(const DiscreteMeasure& mu, double a, const MaximalConfig& cfg) {
  mu.validate();
  cfg.validate(mu.grid);
  const GridSpec& g = mu.grid;
  if (!(a >= 0.0) || a >= double(g.d)) {
    throw DomainError("fractional maximal order a must lie in [0, d)");
  }

  std::vector<std::pair<std::size_t, double>> support;
  for (std::size_t i = 0; i < mu.masses.size(); ++i) {
    if (mu.masses[i] > 0.0) support.emplace_back(i, mu.masses[i]);
  }

  ScalarField out(g);
  std::vector<double> acc(g.node_count());
  for (double r : cfg.radii) {
    std::fill(acc.begin(), acc.end(), 0.0);
    const int reach = static_cast<int>(std::floor(r / g.h + 1e-12));
    const double r2 = (r / g.h) * (r / g.h) * (1.0 + 1e-12);
    for (const auto& [idx, mass] : support) {
      const Index3 iv = g.unindex(idx);
      const int k2lo = g.d == 3 ? -reach : 0;
      const int k2hi = g.d == 3 ? reach : 0;
      for (int d0 = -reach; d0 <= reach; ++d0) {
        const int i0 = iv[0] + d0;
        if (i0 < 0 || i0 >= g.dims[0]) continue;
        for (int d1 = -reach; d1 <= reach; ++d1) {
          const int i1 = iv[1] + d1;
          if (i1 < 0 || i1 >= g.dims[1]) continue;
          for (int d2 = k2lo; d2 <= k2hi; ++d2) {
            const int i2 = iv[2] + d2;
            if (g.d == 3 && (i2 < 0 || i2 >= g.dims[2])) continue;
            if (double(d0) * d0 + double(d1) * d1 + double(d2) * d2 > r2) continue;
            acc[g.index({i0, i1, i2})] += mass;
          }
        }
      }
    }
    const double weight = std::pow(r, a - g.d);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      out.samples[i] = std::max(out.samples[i], weight * acc[i]);
    }
  }
  return out;
}

double lorentz_norm(const ScalarField& f, double p) {
  f.validate();
  if (!(p > 1.0)) throw DomainError("lorentz exponent p must exceed 1");
  std::vector<double> values;
  values.reserve(f.samples.size());
  for (double v : f.samples) values.push_back(std::abs(v));
  std::sort(values.begin(), values.end(), std::greater<double>());

  const double cell = std::pow(f.grid.h, f.grid.d);
  double norm = 0.0;
  for (std::size_t k = 1; k <= values.size(); ++k) {
    const double upper = values[k - 1];
    const double lower = k < values.size() ? values[k] : 0.0;
    if (upper > lower) {
      norm += std::pow(double(k) * cell, 1.0 / p) * (upper - lower);
    }
  }
  return norm;
}

Report adams_check(const DiscreteMeasure& mu, double a, const MaximalConfig& cfg_m,
                   const spectral::SpectralConfig& cfg_s) {
  mu.validate();
  Report report;
  if (mu.total_mass() == 0.0) {
    report.set("bmo_of_riesz", 0.0);
    report.set("max_frac_maximal", 0.0);
    report.set("ratio_upper_defined", false);
    report.set("ratio_lower_defined", false);
    return report;
  }

  ScalarField density(mu.grid);
  const double inv_cell = 1.0 / std::pow(mu.grid.h, mu.grid.d);
  for (std::size_t i = 0; i < mu.masses.size(); ++i) density.samples[i] = mu.masses[i] * inv_cell;

  const ScalarField potential = spectral::riesz_potential(density, a, cfg_s);
  const double bmo = bmo_norm(potential, cfg_m);
  const double frac = grid_sup_norm(fractional_maximal(mu, a, cfg_m));

  report.set("bmo_of_riesz", bmo);
  report.set("max_frac_maximal", frac);
  report.set_ratio("ratio_upper", bmo, frac);
  report.set_ratio("ratio_lower", frac, bmo);
  return report;
}

}  // namespace doro::maximal
