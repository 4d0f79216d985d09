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

#include "doro/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "doro/error.hpp"

namespace doro {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

GridSpec GridSpec::square(int d, int n, double h) {
  GridSpec g;
  g.d = d;
  g.dims = {n, n, n};
  if (d == 2) g.dims[2] = 1;
  g.h = h;
  g.validate();
  return g;
}

double GridSpec::boundary_distance(const Index3& iv) const {
  double dist = std::numeric_limits<double>::infinity();
  for (int a = 0; a < d; ++a) {
    const double x = h * iv[a];
    dist = std::min(dist, std::min(x, extent(a) - x));
  }
  return dist;
}

bool GridSpec::same_layout(const GridSpec& other) const {
  if (d != other.d || h != other.h) return false;
  for (int a = 0; a < d; ++a) {
    if (dims[a] != other.dims[a] || origin[a] != other.origin[a]) return false;
  }
  return true;
}

void GridSpec::validate() const {
  if (d != 2 && d != 3) throw ValidationError("grid dimension must be 2 or 3, got " + std::to_string(d));
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("grid spacing must be a positive finite real");
  for (int a = 0; a < d; ++a) {
    if (dims[a] < 8 || !power_of_two(dims[a])) {
      throw ValidationError("dims[" + std::to_string(a) + "] = " + std::to_string(dims[a]) +
                            " must be a power of two >= 8");
    }
    if (!std::isfinite(origin[a])) throw ValidationError("grid origin must be finite");
  }
}

void ScalarField::validate() const {
  grid.validate();
  if (samples.size() != grid.node_count()) {
    throw ValidationError("sample count " + std::to_string(samples.size()) +
                          " does not match grid node count " + std::to_string(grid.node_count()));
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i])) {
      throw ValidationError("non-finite sample at node index " + std::to_string(i));
    }
  }
}

void VectorField::validate() const {
  grid.validate();
  if (channels.empty()) throw ValidationError("vector field has no channels");
  for (const ScalarField& c : channels) {
    if (!c.grid.same_layout(grid)) throw ValidationError("vector field channels must share one grid");
    c.validate();
  }
}

std::size_t BinaryMask::count_true() const {
  std::size_t n = 0;
  for (std::uint8_t b : bits) n += (b != 0);
  return n;
}

void BinaryMask::validate() const {
  grid.validate();
  if (bits.size() != grid.node_count()) {
    throw ValidationError("mask bit count does not match grid node count");
  }
}

double DiscreteMeasure::total_mass() const {
  double s = 0.0;
  for (double m : masses) s += m;
  return s;
}

void DiscreteMeasure::validate() const {
  grid.validate();
  if (masses.size() != grid.node_count()) {
    throw ValidationError("mass count does not match grid node count");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!std::isfinite(masses[i]) || masses[i] < 0.0) {
      throw ValidationError("measure mass at node " + std::to_string(i) + " must be finite and >= 0");
    }
    total += masses[i];
  }
  if (!std::isfinite(total)) throw ValidationError("total mass must be finite");
}

double grid_integral(const ScalarField& f, double p) {
  f.validate();
  if (std::isinf(p)) return grid_sup_norm(f);
  if (!(p >= 1.0)) throw ValidationError("integral exponent must be >= 1 or +inf");
  const double cell = std::pow(f.grid.h, f.grid.d);
  double acc = 0.0;
  if (p == 1.0) {
    for (double v : f.samples) acc += std::abs(v);
    return acc * cell;
  }
  for (double v : f.samples) acc += std::pow(std::abs(v), p);
  return std::pow(acc * cell, 1.0 / p);
}

double grid_integral(const VectorField& f, double p) {
  f.validate();
  if (!(p >= 1.0) && !std::isinf(p)) throw ValidationError("integral exponent must be >= 1 or +inf");
  const std::size_t n = f.grid.node_count();
  const double cell = std::pow(f.grid.h, f.grid.d);
  double acc = 0.0;
  double sup = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double sq = 0.0;
    for (const ScalarField& c : f.channels) sq += c.samples[i] * c.samples[i];
    const double mag = std::sqrt(sq);
    if (std::isinf(p)) {
      sup = std::max(sup, mag);
    } else if (p == 1.0) {
      acc += mag;
    } else {
      acc += std::pow(mag, p);
    }
  }
  if (std::isinf(p)) return sup;
  if (p == 1.0) return acc * cell;
  return std::pow(acc * cell, 1.0 / p);
}

double grid_sup_norm(const ScalarField& f) {
  double sup = 0.0;
  for (double v : f.samples) sup = std::max(sup, std::abs(v));
  return sup;
}

}  // namespace doro
