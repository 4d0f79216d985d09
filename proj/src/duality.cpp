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

#include "doro/duality.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "doro/error.hpp"
#include "doro/lp.hpp"

namespace doro::duality {

DualityConfig DualityConfig::for_grid(const GridSpec& grid) {
  DualityConfig cfg;
  cfg.lp_grid = grid;
  cfg.scales = maximal::MaximalConfig::for_grid(grid);
  cfg.validate();
  return cfg;
}

void DualityConfig::validate() const {
  lp_grid.validate();
  for (int a = 0; a < lp_grid.d; ++a) {
    if (lp_grid.dims[a] > 20) {
      throw ConfigError("LP grid is capped at 20 nodes per axis; dense simplex only");
    }
  }
  if (axis < 0 || axis >= lp_grid.d) throw ConfigError("derivative axis out of range");
  bool nonzero = false;
  for (double v : l) nonzero = nonzero || v != 0.0;
  if (l.empty() || !nonzero) throw ConfigError("the functional l must be a non-zero vector");
  scales.validate(lp_grid);
}

namespace {

void require_lp_field(const ScalarField& g, const DualityConfig& cfg) {
  g.validate();
  if (!g.grid.same_layout(cfg.lp_grid)) {
    throw ValidationError("field does not live on the configured LP grid");
  }
}

// Dense linear solve with partial pivoting; a = row-major n x n, b = n x k
// column set solved in place.
void solve_dense(std::vector<double> a, std::vector<double>& b, std::size_t n, std::size_t k) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    }
    if (std::abs(a[pivot * n + col]) < 1e-14) {
      throw Error("internal: the Riesz operator matrix must be invertible");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[pivot * n + c], a[col * n + c]);
      for (std::size_t c = 0; c < k; ++c) std::swap(b[pivot * k + c], b[col * k + c]);
    }
    const double inv = 1.0 / a[col * n + col];
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r * n + col] * inv;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      for (std::size_t c = 0; c < k; ++c) b[r * k + c] -= f * b[col * k + c];
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    const double inv = 1.0 / a[r * n + r];
    for (std::size_t c = 0; c < k; ++c) b[r * k + c] *= inv;
  }
}

std::vector<std::vector<double>> scale_convolution_matrices(const DualityConfig& cfg,
                                                            const spectral::SpectralConfig& scfg) {
  std::vector<std::vector<double>> mats;
  mats.reserve(cfg.scales.scales.size());
  for (double t : cfg.scales.scales) {
    mats.push_back(spectral::dense_operator_matrix(cfg.lp_grid, scfg, [t](const Point3& xi) {
      const double sq = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
      return std::exp(-0.5 * t * t * sq);
    }));
  }
  return mats;
}

}  // namespace

std::pair<double, ScalarField> primal_value(const ScalarField& g, const DualityConfig& cfg,
                                            const spectral::SpectralConfig& scfg) {
  cfg.validate();
  require_lp_field(g, cfg);
  const std::size_t n = cfg.lp_grid.node_count();
  const double cell = std::pow(cfg.lp_grid.h, cfg.lp_grid.d);

  const std::vector<std::vector<double>> conv = scale_convolution_matrices(cfg, scfg);
  const std::vector<double> riesz =
      spectral::dense_operator_matrix(cfg.lp_grid, scfg, [](const Point3& xi) {
        const double mag = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        return mag == 0.0 ? 0.0 : 1.0 / mag;
      });

  // The stated program - minimize sum u h^d over u >= +-(Phi * psi_t) and
  // I_1[Phi] >= g - is solved in domination-slack coordinates: the window
  // restriction M of I_1 is positive definite, so Phi = M^{-1}(g + y) with
  // y >= 0 parametrizes the feasible Phi exactly. This removes the fully
  // degenerate b = 0 wall that stalls a cold-started simplex.
  std::vector<double> rhs_and_basis(n * (n + 1));
  for (std::size_t x = 0; x < n; ++x) {
    rhs_and_basis[x * (n + 1)] = g.samples[x];
    for (std::size_t y = 0; y < n; ++y) {
      rhs_and_basis[x * (n + 1) + 1 + y] = (x == y) ? 1.0 : 0.0;
    }
  }
  solve_dense(riesz, rhs_and_basis, n, n + 1);
  // Column 0: M^{-1} g; columns 1..n: M^{-1}.
  std::vector<double> phi0(n), minv(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    phi0[x] = rhs_and_basis[x * (n + 1)];
    for (std::size_t y = 0; y < n; ++y) minv[x * n + y] = rhs_and_basis[x * (n + 1) + 1 + y];
  }

  // Variables: y (n, >= 0) then u (n, >= 0).
  lp::LinearProgram prog;
  prog.objective.assign(2 * n, 0.0);
  for (std::size_t x = 0; x < n; ++x) prog.objective[n + x] = cell;

  std::vector<double> kminv(n * n), kphi0(n);
  prog.constraints.reserve(2 * conv.size() * n);
  for (const std::vector<double>& K : conv) {
    for (std::size_t x = 0; x < n; ++x) {
      kphi0[x] = 0.0;
      for (std::size_t y = 0; y < n; ++y) {
        kphi0[x] += K[x * n + y] * phi0[y];
        double acc = 0.0;
        for (std::size_t z = 0; z < n; ++z) acc += K[x * n + z] * minv[z * n + y];
        kminv[x * n + y] = acc;
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      // u(x) -+ (K M^{-1} (g + y))(x) >= 0.
      lp::Constraint up, down;
      up.coeffs.assign(2 * n, 0.0);
      for (std::size_t y = 0; y < n; ++y) up.coeffs[y] = -kminv[x * n + y];
      up.coeffs[n + x] = 1.0;
      up.rel = lp::Relation::ge;
      up.bound = kphi0[x];
      down = up;
      for (std::size_t y = 0; y < n; ++y) down.coeffs[y] = kminv[x * n + y];
      down.bound = -kphi0[x];
      prog.constraints.push_back(std::move(up));
      prog.constraints.push_back(std::move(down));
    }
  }

  const lp::LPSolution sol = lp::solve_lp(prog);
  if (sol.status != lp::LPStatus::optimal) {
    throw Error("internal: the H^1-side LP must be feasible and bounded");
  }
  ScalarField phi(cfg.lp_grid);
  for (std::size_t x = 0; x < n; ++x) {
    double acc = phi0[x];
    for (std::size_t y = 0; y < n; ++y) acc += minv[x * n + y] * sol.x[y];
    phi.samples[x] = acc;
  }
  return {sol.value, std::move(phi)};
}

std::pair<double, DiscreteMeasure> dual_value(const ScalarField& g, const DualityConfig& cfg) {
  cfg.validate();
  require_lp_field(g, cfg);
  const GridSpec& grid = cfg.lp_grid;
  const std::size_t n = grid.node_count();

  lp::LinearProgram prog;
  prog.maximize = true;
  prog.objective = g.samples;
  // mu >= 0 is the default bound.

  // r^{1-d} * mass(B_r(x)) <= 1, scaled by r^{d-1} for conditioning.
  for (double r : cfg.scales.radii) {
    const double bound = std::pow(r, grid.d - 1);
    const double r2 = (r / grid.h) * (r / grid.h) * (1.0 + 1e-12);
    for (std::size_t x = 0; x < n; ++x) {
      const Index3 ix = grid.unindex(x);
      lp::Constraint row;
      row.coeffs.assign(n, 0.0);
      for (std::size_t y = 0; y < n; ++y) {
        const Index3 iy = grid.unindex(y);
        double sq = 0.0;
        for (int a = 0; a < grid.d; ++a) {
          const double dv = double(ix[a] - iy[a]);
          sq += dv * dv;
        }
        if (sq <= r2) row.coeffs[y] = 1.0;
      }
      row.rel = lp::Relation::le;
      row.bound = bound;
      prog.constraints.push_back(std::move(row));
    }
  }

  const lp::LPSolution sol = lp::solve_lp(prog);
  if (sol.status != lp::LPStatus::optimal) {
    throw Error("internal: the measure-side LP must be feasible and bounded");
  }
  DiscreteMeasure mu(grid);
  for (std::size_t x = 0; x < n; ++x) mu.masses[x] = std::max(0.0, sol.x[x]);
  return {sol.value, std::move(mu)};
}

namespace {

// g = Re< d_axis^{m-1} phi, l >; everything is real here, so Re is the
// identity and the pairing is a plain channel contraction.
ScalarField pairing_field(const VectorField& phi, const OperatorSymbol& A,
                          const DualityConfig& cfg, const spectral::SpectralConfig& scfg) {
  ScalarField g(phi.grid);
  for (int e = 0; e < A.dimE; ++e) {
    if (cfg.l[e] == 0.0) continue;
    const ScalarField der = A.m == 1
                                ? phi.channels[e]
                                : spectral::spectral_derivative(phi.channels[e], cfg.axis,
                                                                A.m - 1, scfg);
    for (std::size_t i = 0; i < g.samples.size(); ++i) g.samples[i] += cfg.l[e] * der.samples[i];
  }
  return g;
}

}  // namespace

Report duality_gap_check(const VectorField& phi, const OperatorSymbol& A,
                         const DualityConfig& cfg, const spectral::SpectralConfig& scfg) {
  A.validate();
  phi.validate();
  cfg.validate();
  if (phi.channel_count() != A.dimE) {
    throw ValidationError("field channel count does not match the symbol's dimE");
  }
  if (static_cast<int>(cfg.l.size()) != A.dimE) {
    throw ValidationError("the functional l must have dimE entries");
  }
  if (!phi.grid.same_layout(cfg.lp_grid)) {
    throw ValidationError("field does not live on the configured LP grid");
  }

  const ScalarField g = pairing_field(phi, A, cfg, scfg);
  const double rhs = grid_integral(apply_symbol(A, phi, scfg), 1.0);
  const double primal = primal_value(g, cfg, scfg).first;
  const double dual = dual_value(g, cfg).first;

  Report report;
  report.set("primal", primal);
  report.set("dual", dual);
  report.set("rhs", rhs);
  report.set_ratio("ratio_primal", primal, rhs);
  report.set_ratio("ratio_dual", dual, rhs);
  report.set_ratio("gap", primal, dual);
  return report;
}

Report embedding_ratio(const VectorField& phi, const OperatorSymbol& A,
                       const spectral::SpectralConfig& scfg) {
  A.validate();
  phi.validate();
  if (phi.channel_count() != A.dimE) {
    throw ValidationError("field channel count does not match the symbol's dimE");
  }

  const Report elliptic = is_elliptic(A, 256, 0);
  const Report cancelling = is_cancelling(A, 256, 0);

  // All derivative components d^gamma phi_e over multi-indices |gamma| = m-1.
  std::vector<Index3> gammas;
  {
    const int order = A.m - 1;
    if (A.d == 2) {
      for (int g0 = 0; g0 <= order; ++g0) gammas.push_back({g0, order - g0, 0});
    } else {
      for (int g0 = 0; g0 <= order; ++g0) {
        for (int g1 = 0; g1 + g0 <= order; ++g1) gammas.push_back({g0, g1, order - g0 - g1});
      }
    }
  }
  VectorField derivatives(phi.grid, A.dimE * static_cast<int>(gammas.size()));
  int ch = 0;
  for (int e = 0; e < A.dimE; ++e) {
    for (const Index3& gamma : gammas) {
      ScalarField der = phi.channels[e];
      for (int a = 0; a < A.d; ++a) {
        if (gamma[a] > 0) der = spectral::spectral_derivative(der, a, gamma[a], scfg);
      }
      derivatives.channels[ch++] = std::move(der);
    }
  }

  const double p = double(A.d) / double(A.d - 1);
  const double numerator = grid_integral(derivatives, p);
  const double denominator = grid_integral(apply_symbol(A, phi, scfg), 1.0);

  Report report;
  report.set("elliptic", elliptic.flag("elliptic"));
  report.set("cancelling", cancelling.flag("cancelling"));
  report.set("derivative_lorentz_norm", numerator);
  report.set("operator_l1_norm", denominator);
  report.set_ratio("ratio", numerator, denominator);
  return report;
}

}  // namespace doro::duality
