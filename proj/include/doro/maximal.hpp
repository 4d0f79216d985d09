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

#ifndef DORO_MAXIMAL_HPP
#define DORO_MAXIMAL_HPP

#include "doro/grid.hpp"
#include "doro/report.hpp"
#include "doro/spectral.hpp"

namespace doro::maximal {

/// Dyadic scale set t_k = h 2^k shared by the grand-maximal sweep, the
/// fractional maximal stencils and the BMO windows. Scales must be strictly
/// increasing with the largest at most a quarter of the domain size.
struct MaximalConfig {
  std::vector<double> scales;
  std::vector<double> radii;

  /// k = 0 .. log2(min dims) - 2, so the largest scale is exactly L/4.
  static MaximalConfig for_grid(const GridSpec& grid);

  void validate(const GridSpec& grid) const;
};

/// Truncated grand-maximal H^1 norm: the L^1 norm of
/// x -> max_t |(f * psi_t)(x)| over the dyadic scales, with psi a unit-mass
/// Gaussian so every convolution is a diagonal multiplier. Only ratios of
/// h1_norm values are contract-bearing; the constant depends on psi and on
/// the scale truncation. If `warnings` is given and f is not mean-zero to
/// 1e-6 * ||f||_1, a flag entry is attached (H^1 membership needs mean zero).
double h1_norm(const ScalarField& f, const MaximalConfig& cfg,
               const spectral::SpectralConfig& scfg = {}, Report* warnings = nullptr);

/// Max over square windows (sides from cfg.radii, half-stride lattice) of
/// the mean absolute deviation from the window mean.
double bmo_norm(const ScalarField& f, const MaximalConfig& cfg);

/// M_a[mu](x) = max over r in cfg.radii of r^{a-d} * mu(closed ball B_r(x)),
/// ball masses summed exactly over disk stencils.
ScalarField fractional_maximal(const DiscreteMeasure& mu, double a, const MaximalConfig& cfg);

/// Layer-cake L_{p,1} norm: integral over t of |{|f| > t}|^{1/p}, evaluated
/// exactly on the step distribution function induced by the samples. The
/// bare layer-cake normalization is used throughout; compare ratios only.
double lorentz_norm(const ScalarField& f, double p);

/// Two-sided comparison of ||I_a[mu]||_BMO against ||M_a[mu]||_inf, with mu
/// converted to a density by dividing masses by h^d. Degenerate measures
/// yield undefined-ratio flags instead of NaNs.
Report adams_check(const DiscreteMeasure& mu, double a, const MaximalConfig& cfg_m,
                   const spectral::SpectralConfig& cfg_s);

}  // namespace doro::maximal

#endif  // DORO_MAXIMAL_HPP
