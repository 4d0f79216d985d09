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

#ifndef DORO_SPECTRAL_HPP
#define DORO_SPECTRAL_HPP

#include <functional>
#include <vector>

#include "doro/grid.hpp"

namespace doro::spectral {

/// Free-space convolutions are approximated on a torus obtained by
/// zero-padding each axis `pad_factor` times; the window sits centered in
/// the padded domain. The zero-frequency multiplier coefficient is always
/// set to 0, which selects the mean-zero representative.
struct SpectralConfig {
  int pad_factor = 4;

  void validate() const;
};

/// Bookkeeping of the window embedded centered in the padded torus.
struct PaddedGrid {
  GridSpec padded;
  Index3 offset{0, 0, 0};

  std::size_t padded_index_of_window(const Index3& window_iv) const {
    Index3 iv = window_iv;
    for (int a = 0; a < padded.d; ++a) iv[a] += offset[a];
    return padded.index(iv);
  }
};

PaddedGrid make_padded_grid(const GridSpec& window, const SpectralConfig& cfg);

/// Real Fourier multiplier evaluated at an angular frequency vector. Must be
/// even in xi for the output of apply_multiplier to stay real.
using Multiplier = std::function<double(const Point3& xi)>;

/// Zero-pads f into its centered window, applies the multiplier on the
/// padded torus (DFT angular frequencies 2*pi*k/(N_pad*h), symmetric
/// negative half) and restricts back to the window grid.
ScalarField apply_multiplier(const ScalarField& f, const SpectralConfig& cfg, const Multiplier& m);

/// Same, but returns the full padded field; used by atom construction and
/// the zero-mode diagnostics in tests.
std::vector<double> apply_multiplier_padded(const ScalarField& f, const SpectralConfig& cfg,
                                            const Multiplier& m, PaddedGrid* pg_out = nullptr);

/// In-place multiplier application to a field already living on the padded
/// grid.
void apply_multiplier_inplace(std::vector<double>& padded_samples, const PaddedGrid& pg,
                              const Multiplier& m);

ScalarField restrict_to_window(const std::vector<double>& padded_samples, const GridSpec& window,
                               const PaddedGrid& pg);

/// c_a = Gamma((d-a)/2) / (2^a pi^{d/2} Gamma(a/2)), the unique constant
/// making x -> c_a |x|^{a-d} the kernel of the Fourier multiplier |xi|^{-a}.
double riesz_constant(int d, double a);

/// I_a[f]: multiplier |xi|^{-a} on the padded torus, zero mode set to 0.
ScalarField riesz_potential(const ScalarField& f, double a, const SpectralConfig& cfg = {});

/// (-Delta)^{1/2} f: multiplier |xi|; output has mean zero on the padded
/// domain up to round-off.
ScalarField half_laplacian(const ScalarField& f, const SpectralConfig& cfg = {});

/// Central differences (f(x+h e_i) - f(x-h e_i)) / 2h with out-of-range
/// samples treated as zero.
VectorField gradient(const ScalarField& f);

/// order-fold spectral derivative along one axis: multiplier (i xi_axis)^order
/// on the padded torus (Nyquist plane zeroed for odd orders so the output
/// stays real). order = 0 returns f unchanged.
ScalarField spectral_derivative(const ScalarField& f, int axis, int order,
                                const SpectralConfig& cfg = {});

/// Dense window-to-window matrix (row-major, node-row x node-col) of the
/// padded-torus operator with the given even multiplier; column y is the
/// restriction of the operator applied to the unit sample at node y, so the
/// matrix acts on sample vectors exactly like apply_multiplier. Intended
/// for the LP surrogates on small grids only.
std::vector<double> dense_operator_matrix(const GridSpec& window, const SpectralConfig& cfg,
                                          const Multiplier& m);

/// Solves riesz_potential(F, 1, cfg) == target for the window-supported F.
/// The window restriction of the torus I_1 is symmetric positive definite
/// (killing the zero mode leaves no constant in the range of window fields),
/// so the solve is a preconditioned conjugate gradient with FFT matvecs,
/// preconditioned by the half-laplacian. Throws when the residual fails to
/// reach rel_tol * ||target|| within max_iter iterations.
ScalarField riesz_window_inverse(const ScalarField& target, const SpectralConfig& cfg = {},
                                 double rel_tol = 1e-12, int max_iter = 800);

}  // namespace doro::spectral

#endif  // DORO_SPECTRAL_HPP
