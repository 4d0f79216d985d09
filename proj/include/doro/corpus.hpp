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

#ifndef DORO_CORPUS_HPP
#define DORO_CORPUS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "doro/grid.hpp"

namespace doro {

/// C-infinity monotone step: 0 for s <= 0, 1 for s >= 1, the classical
/// exp(-1/s) two-sided blend in between. Shared by corpus edges and hat
/// profiles so level geometry matches between generators and majorants.
double smooth_step(double s);

enum class FieldKind { gauss_bump, smoothed_disk, two_bumps, random_smooth, annulus };

FieldKind field_kind_from_name(const std::string& name);
std::string field_kind_name(FieldKind kind);

/// Geometry parameters, all lengths relative to the domain extent L (so the
/// same params describe the same shape at any resolution). Radii must stay
/// short of the domain half-width and centers inside the domain.
struct FieldParams {
  Point3 center{0.5, 0.5, 0.5};
  double sigma = 1.0 / 16.0;     // gauss_bump / two_bumps width
  double radius = 0.3;           // smoothed_disk / annulus outer radius
  double inner_radius = 0.15;    // annulus inner radius
  double transition = 1.0 / 32.0;  // edge width of disk-like profiles
  double aspect = 1.0;           // axis-0 stretch; != 1 makes an ellipse
  double separation = 0.35;      // two_bumps center distance
  double amplitude = 1.0;
  bool signed_pair = false;      // two_bumps: opposite-sign pair (mean ~ 0)
  int modes = 3;                 // random_smooth highest wavenumber per axis
};

/// Deterministic family of compactly supported smooth test fields. Outputs
/// vanish identically on the 4h boundary frame and are non-negative unless
/// `signed_pair` asks for a signed pair.
ScalarField make_test_field(FieldKind kind, const GridSpec& grid, const FieldParams& params = {},
                            std::uint64_t seed = 0);

struct NamedField {
  std::string name;
  ScalarField field;
};

/// The ten-field smooth corpus used by the construction, coarea and
/// embedding sweeps.
std::vector<NamedField> standard_corpus(int resolution);

/// standard_corpus plus near-indicator smoothed disks (transition 2h, 4h,
/// 8h), the extremal family for the Lorentz embedding.
std::vector<NamedField> lorentz_corpus(int resolution);

struct ShapeCase {
  std::string name;
  ScalarField field;
  double level;
};

/// Smooth-boundary shape corpus for the boxing sweep: disk, ellipse,
/// annulus, two disks and a thin bar, each at two scales (scale_index 0, 1
/// doubles every length).
std::vector<ShapeCase> boxing_shape_corpus(int resolution);

}  // namespace doro

#endif  // DORO_CORPUS_HPP
