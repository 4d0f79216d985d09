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

#ifndef DORO_DORRONSORO_HPP
#define DORO_DORRONSORO_HPP

#include <utility>
#include <vector>

#include "doro/capacity.hpp"
#include "doro/grid.hpp"
#include "doro/report.hpp"
#include "doro/spectral.hpp"

namespace doro::dorronsoro {

/// Hat profile: exactly 1 on the ball of radius R, exactly 0 outside
/// R * (1 + transition_width), smooth monotone radial blend between.
struct HatSpec {
  double transition_width = 1.0;

  void validate() const;
};

struct LevelCover {
  double level = 0.0;
  capacity::BallCover cover;
};

/// Output of decompose: the majorant F with its level covers and the
/// summary metrics of the construction.
struct DecompositionResult {
  ScalarField F;
  std::vector<LevelCover> levels;
  double delta = 0.0;              // level spacing
  double h1_estimate = 0.0;        // h1_norm(F)
  double tv = 0.0;                 // ||grad f||_L1
  double ratio = 0.0;              // h1_estimate / tv (0 when tv = 0)
  double domination_margin = 0.0;  // min over nodes of I_1[F] - f
};

/// theta_R centered at `center` (window coordinates) on the given grid;
/// support must sit inside the grid interior by at least 4h.
ScalarField hat_function(double R, const Point3& center, const GridSpec& grid,
                         const HatSpec& spec = {});

/// The H^1 atom adapted to B_R(center): the half-Laplacian of theta_R
/// computed on the padded torus, plus a wide hat term restoring the zero
/// mode the torus multiplier removes, so that I_1[atom] equals theta_R on
/// the window to transform round-off. The hat lives on the padded domain;
/// its support may exceed the window but must fit the padded box (the
/// transition width is shrunk towards 0.25 before erroring).
ScalarField make_atom(double R, const Point3& center, const GridSpec& grid,
                      const HatSpec& spec = {}, const spectral::SpectralConfig& cfg = {});

/// Far-field envelope sup over 2R <= |x - center| <= 8R of
/// |Theta_R(x)| (R + |x - center|)^{d+1} / R^d, at the given grid and at a
/// once-refined grid; the R^d normalization matches the mass-preserving
/// dilation so the constant is uniform in R. Keys: envelope_sup,
/// envelope_sup_fine, resolution_ratio, resolution_stable_pass.
Report decay_check(double R, const GridSpec& grid, const HatSpec& spec = {},
                   const spectral::SpectralConfig& cfg = {});

/// Self-check of the atom construction: applies I_1 to the padded atom
/// coherently (no intermediate window restriction) and compares against the
/// hat profile on the window. Keys: identity_sup_error (should be at
/// round-off scale), domination_min (min of I_1[atom] - indicator of B_R).
Report atom_identity_check(double R, const Point3& center, const GridSpec& grid,
                           const HatSpec& spec = {}, const spectral::SpectralConfig& cfg = {});

/// Covers the mask greedily at exponent d-1 and returns Omega, the sum of
/// per-ball atoms, together with the cover; I_1[Omega] dominates the mask
/// indicator nodewise up to round-off.
std::pair<ScalarField, capacity::BallCover> set_majorant(const BinaryMask& mask,
                                                         const HatSpec& spec = {},
                                                         const spectral::SpectralConfig& cfg = {});

/// The constructive decomposition: levels t_j = j * delta with
/// delta = max(f) / n_levels, F = delta * sum_j Omega_j over the superlevel
/// majorants. Requires f non-negative (split f = f+ - f- first) and
/// compactly supported inside the 4h frame. Guarantees
/// I_1[F] >= f - delta - 1e-6 nodewise.
DecompositionResult decompose(const ScalarField& f, int n_levels, const HatSpec& spec = {},
                              const spectral::SpectralConfig& cfg = {});

/// Recomputes I_1[result.F] and the norm chain from scratch. Keys: margin,
/// margin_tolerance, margin_pass, h1_estimate, tv, h1_tv_ratio,
/// level_content_sum, gustin_ratio.
Report verify_decomposition(const ScalarField& f, const DecompositionResult& result,
                            const spectral::SpectralConfig& cfg = {});

}  // namespace doro::dorronsoro

#endif  // DORO_DORRONSORO_HPP
