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

#ifndef DORO_DUALITY_HPP
#define DORO_DUALITY_HPP

#include <utility>
#include <vector>

#include "doro/grid.hpp"
#include "doro/maximal.hpp"
#include "doro/report.hpp"
#include "doro/spectral.hpp"
#include "doro/symbol.hpp"

namespace doro::duality {

/// Setup for the finite minimax pair: the functional l on E, the derivative
/// axis, and the small grid the LPs live on (at most 20 nodes per axis, so
/// 8 or 16 given the power-of-two rule).
struct DualityConfig {
  std::vector<double> l{1.0};
  int axis = 0;
  GridSpec lp_grid = GridSpec::square(2, 16, 1.0 / 16.0);
  maximal::MaximalConfig scales;  // LP surrogate scales and radii

  static DualityConfig for_grid(const GridSpec& grid);

  void validate() const;
};

/// The H^1-side optimum: minimize the discretized grand-maximal norm
/// sum_x u(x) h^d subject to u >= +-(Phi * psi_t) for every scale and
/// I_1[Phi] >= g nodewise, with Phi free. Returns the optimum and the
/// minimizing Phi. Always feasible; an infeasible status is an internal
/// error.
std::pair<double, ScalarField> primal_value(const ScalarField& g, const DualityConfig& cfg,
                                            const spectral::SpectralConfig& scfg = {});

/// The measure-side optimum: maximize sum g mu over non-negative mu with
/// the discrete fractional maximal bound M_1[mu] <= 1 enforced at every
/// node and radius. Returns the optimum and the maximizing measure.
std::pair<double, DiscreteMeasure> dual_value(const ScalarField& g, const DualityConfig& cfg);

/// Runs both optima on g = Re<d_j^{m-1} phi, l> and compares them with
/// ||A(partial) phi||_L1. Keys: primal, dual, rhs, ratio_primal,
/// ratio_dual, gap (+ _defined flags).
Report duality_gap_check(const VectorField& phi, const OperatorSymbol& A,
                         const DualityConfig& cfg, const spectral::SpectralConfig& scfg = {});

/// ||grad^{m-1} phi||_{L_{d/(d-1)}} / ||A(partial) phi||_L1 together with
/// the elliptic/cancelling classification of A.
Report embedding_ratio(const VectorField& phi, const OperatorSymbol& A,
                       const spectral::SpectralConfig& scfg = {});

}  // namespace doro::duality

#endif  // DORO_DUALITY_HPP
