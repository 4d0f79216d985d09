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

#ifndef DORO_GRID_HPP
#define DORO_GRID_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace doro {

using Index3 = std::array<int, 3>;
using Point3 = std::array<double, 3>;

/// Uniform axis-aligned sampling grid in dimension 2 or 3.
///
/// Samples are stored row-major with the last axis fastest; node (i_0,...,
/// i_{d-1}) sits at origin + h * i. The domain is the cube [0, dims*h)^d in
/// coordinates relative to the origin. Per-axis counts must be powers of two
/// (>= 8) so dyadic scale and window hierarchies never need remainder
/// handling.
struct GridSpec {
  int d = 2;
  Index3 dims{8, 8, 1};
  double h = 1.0;
  Point3 origin{0.0, 0.0, 0.0};

  static GridSpec square(int d, int n, double h);

  std::size_t node_count() const {
    std::size_t n = 1;
    for (int a = 0; a < d; ++a) n *= static_cast<std::size_t>(dims[a]);
    return n;
  }

  std::size_t index(const Index3& iv) const {
    std::size_t idx = 0;
    for (int a = 0; a < d; ++a) idx = idx * dims[a] + iv[a];
    return idx;
  }

  Index3 unindex(std::size_t idx) const {
    Index3 iv{0, 0, 0};
    for (int a = d - 1; a >= 0; --a) {
      iv[a] = static_cast<int>(idx % dims[a]);
      idx /= dims[a];
    }
    return iv;
  }

  Point3 coords(const Index3& iv) const {
    Point3 p{0.0, 0.0, 0.0};
    for (int a = 0; a < d; ++a) p[a] = origin[a] + h * iv[a];
    return p;
  }

  /// Side length of the domain along `axis`.
  double extent(int axis) const { return dims[axis] * h; }

  double min_extent() const {
    double e = extent(0);
    for (int a = 1; a < d; ++a) e = e < extent(a) ? e : extent(a);
    return e;
  }

  int min_dim() const {
    int n = dims[0];
    for (int a = 1; a < d; ++a) n = n < dims[a] ? n : dims[a];
    return n;
  }

  /// Distance from a node to the boundary of [0, dims*h)^d measured in
  /// coordinates relative to the origin.
  double boundary_distance(const Index3& iv) const;

  bool same_layout(const GridSpec& other) const;

  void validate() const;
};

/// Real samples on a grid, one value per node. Samples must be finite.
struct ScalarField {
  GridSpec grid;
  std::vector<double> samples;

  ScalarField() = default;
  explicit ScalarField(const GridSpec& g, double fill = 0.0)
      : grid(g), samples(g.node_count(), fill) {}

  double& operator[](std::size_t i) { return samples[i]; }
  double operator[](std::size_t i) const { return samples[i]; }
  double at(const Index3& iv) const { return samples[grid.index(iv)]; }
  double& at(const Index3& iv) { return samples[grid.index(iv)]; }

  void validate() const;
};

/// k scalar channels sharing one grid; houses gradients and E-/F-valued
/// fields of operator calculus.
struct VectorField {
  GridSpec grid;
  std::vector<ScalarField> channels;

  VectorField() = default;
  VectorField(const GridSpec& g, int k)
      : grid(g), channels(static_cast<std::size_t>(k), ScalarField(g)) {}

  int channel_count() const { return static_cast<int>(channels.size()); }

  void validate() const;
};

/// One boolean per node; houses superlevel sets.
struct BinaryMask {
  GridSpec grid;
  std::vector<std::uint8_t> bits;

  BinaryMask() = default;
  explicit BinaryMask(const GridSpec& g, bool fill = false)
      : grid(g), bits(g.node_count(), fill ? 1 : 0) {}

  bool test(std::size_t i) const { return bits[i] != 0; }
  std::size_t count_true() const;

  void validate() const;
};

/// Non-negative point masses on grid nodes.
struct DiscreteMeasure {
  GridSpec grid;
  std::vector<double> masses;

  DiscreteMeasure() = default;
  explicit DiscreteMeasure(const GridSpec& g) : grid(g), masses(g.node_count(), 0.0) {}

  double total_mass() const;

  void validate() const;
};

/// (Sum |f|^p h^d)^{1/p}, or max |f| when p is +infinity.
double grid_integral(const ScalarField& f, double p);

/// L^p norm of the pointwise Euclidean magnitude across channels.
double grid_integral(const VectorField& f, double p);

double grid_sup_norm(const ScalarField& f);

}  // namespace doro

#endif  // DORO_GRID_HPP
