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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "doro/corpus.hpp"
#include "doro/duality.hpp"
#include "doro/error.hpp"
#include "doro/grid.hpp"
#include "doro/dorronsoro.hpp"
#include "doro/maximal.hpp"
#include "doro/spectral.hpp"
#include "doro/symbol.hpp"

using namespace doro;
using duality::DualityConfig;
using duality::OperatorSymbol;

TEST_CASE("symbol validation enforces homogeneity and shape") {
  OperatorSymbol bad = OperatorSymbol::gradient_symbol(2);
  bad.terms[0].beta = {2, 0, 0};  // |beta| != m
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = OperatorSymbol::gradient_symbol(2);
  for (auto& t : bad.terms) std::fill(t.matrix.begin(), t.matrix.end(), 0.0);
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = OperatorSymbol::gradient_symbol(2);
  bad.terms[0].matrix.pop_back();
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("gradient symbol is elliptic and cancelling in d = 2 and 3") {
  for (int d : {2, 3}) {
    const OperatorSymbol grad = OperatorSymbol::gradient_symbol(d);
    bool elliptic0 = false, cancelling0 = false;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Report e = duality::is_elliptic(grad, 512, seed);
      const Report c = duality::is_cancelling(grad, 512, seed);
      if (seed == 0) {
        elliptic0 = e.flag("elliptic");
        cancelling0 = c.flag("cancelling");
      }
      CHECK(e.flag("elliptic") == elliptic0);
      CHECK(c.flag("cancelling") == cancelling0);
    }
    CHECK(elliptic0);
    CHECK(cancelling0);
  }
}

TEST_CASE("the scalar |xi|^2 symbol is elliptic but not cancelling") {
  const OperatorSymbol lap = OperatorSymbol::scalar_laplacian_symbol(2);
  const Report e = duality::is_elliptic(lap, 512, 0);
  CHECK(e.flag("elliptic"));
  CHECK(e.number("min_singular_value") == doctest::Approx(1.0));  // |xi|^2 = 1 on the sphere
  const Report c = duality::is_cancelling(lap, 512, 0);
  CHECK(!c.flag("cancelling"));
  CHECK(c.number("residual_dimension") == doctest::Approx(1.0));
  CHECK(c.flag("elliptic"));
}

TEST_CASE("the axis-aligned xi_1 e symbol is caught as non-elliptic") {
  OperatorSymbol a;
  a.d = 2;
  a.m = 1;
  a.dimE = 1;
  a.dimF = 1;
  a.terms.push_back({{1, 0, 0}, {1.0}});
  a.validate();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CHECK(!duality::is_elliptic(a, 512, seed).flag("elliptic"));  // vanishes at xi = e_2
  }
}

TEST_CASE("block stacks: two elliptic blocks stay elliptic; a full-range block kills cancelling") {
  // Stack of two gradient symbols: dimE = 2, dimF = 4, still elliptic and
  // cancelling (ranges are planes span{(xi,0),(0,xi)} whose intersection
  // over directions is trivial).
  OperatorSymbol stack;
  stack.d = 2;
  stack.m = 1;
  stack.dimE = 2;
  stack.dimF = 4;
  for (int axis = 0; axis < 2; ++axis) {
    OperatorSymbol::Term t;
    t.beta = {0, 0, 0};
    t.beta[axis] = 1;
    t.matrix.assign(8, 0.0);
    t.matrix[std::size_t(axis) * 2 + 0] = 1.0;        // rows 0..1: gradient of e1
    t.matrix[std::size_t(2 + axis) * 2 + 1] = 1.0;    // rows 2..3: gradient of e2
    stack.terms.push_back(std::move(t));
  }
  stack.validate();
  CHECK(duality::is_elliptic(stack, 512, 0).flag("elliptic"));
  CHECK(duality::is_cancelling(stack, 512, 0).flag("cancelling"));

  // Hessian-like block (cancelling) direct-summed with |xi|^2 (full range):
  // the scalar block survives every intersection.
  OperatorSymbol mixed;
  mixed.d = 2;
  mixed.m = 2;
  mixed.dimE = 2;
  mixed.dimF = 5;  // 4 hessian entries + 1 scalar
  const int betas[3][2] = {{2, 0}, {1, 1}, {0, 2}};
  for (const auto& b : betas) {
    OperatorSymbol::Term t;
    t.beta = {b[0], b[1], 0};
    t.matrix.assign(10, 0.0);
    // Hessian rows: xi^beta times e1 into the slot(s) of that monomial.
    if (b[0] == 2) t.matrix[0 * 2 + 0] = 1.0;
    if (b[0] == 1 && b[1] == 1) {
      t.matrix[1 * 2 + 0] = 1.0;
      t.matrix[2 * 2 + 0] = 1.0;
    }
    if (b[1] == 2) t.matrix[3 * 2 + 0] = 1.0;
    // Scalar |xi|^2 block on e2.
    if (b[0] == 2 || b[1] == 2) t.matrix[4 * 2 + 1] = 1.0;
    mixed.terms.push_back(std::move(t));
  }
  mixed.validate();
  CHECK(duality::is_elliptic(mixed, 512, 0).flag("elliptic"));
  const Report c = duality::is_cancelling(mixed, 512, 0);
  CHECK(!c.flag("cancelling"));
  CHECK(c.number("residual_dimension") == doctest::Approx(1.0));
}

TEST_CASE("symbol text round-trip and parse errors") {
  const OperatorSymbol grad = OperatorSymbol::gradient_symbol(2);
  const OperatorSymbol back = OperatorSymbol::parse_text(grad.to_text());
  CHECK(back.d == 2);
  CHECK(back.m == 1);
  CHECK(back.dimE == 1);
  CHECK(back.dimF == 2);
  CHECK(back.terms.size() == 2);

  CHECK_THROWS_AS(OperatorSymbol::parse_text("nonsense\n"), FormatError);
  CHECK_THROWS_AS(OperatorSymbol::parse_text("beta: 1 0 | matrix: 1\nbeta: 0 2 | matrix: 1\n"),
                  FormatError);  // inconsistent order
  CHECK_THROWS_AS(OperatorSymbol::parse_text(""), FormatError);

  const auto path = std::filesystem::temp_directory_path() / "doro_gradient.sym";
  {
    std::ofstream out(path);
    out << "# gradient in d = 2\n" << grad.to_text();
  }
  const OperatorSymbol loaded = OperatorSymbol::load(path);
  CHECK(duality::is_elliptic(loaded, 256, 0).flag("elliptic"));
  std::filesystem::remove(path);
}

TEST_CASE("apply_symbol: zero, linearity, gradient agreement") {
  const GridSpec g = GridSpec::square(2, 64, 1.0 / 64);
  const OperatorSymbol grad = OperatorSymbol::gradient_symbol(2);

  VectorField zero(g, 1);
  const VectorField grad_zero = duality::apply_symbol(grad, zero);
  CHECK(grid_integral(grad_zero, 1.0) == 0.0);

  FieldParams p;
  p.sigma = 0.12;
  VectorField phi(g, 1);
  phi.channels[0] = make_test_field(FieldKind::gauss_bump, g, p, 0);
  const VectorField spectral_grad = duality::apply_symbol(grad, phi);
  const VectorField central = spectral::gradient(phi.channels[0]);
  double sup = 0.0, worst = 0.0;
  for (int ch = 0; ch < 2; ++ch) {
    for (int i = 8; i < 56; ++i) {
      for (int j = 8; j < 56; ++j) {
        sup = std::max(sup, std::abs(central.channels[ch].at({i, j, 0})));
        worst = std::max(worst, std::abs(spectral_grad.channels[ch].at({i, j, 0}) -
                                         central.channels[ch].at({i, j, 0})));
      }
    }
  }
  CHECK(worst < 0.01 * sup);

  // Linearity to round-off.
  VectorField psi(g, 1);
  psi.channels[0] = make_test_field(FieldKind::random_smooth, g, {}, 3);
  VectorField combo(g, 1);
  for (std::size_t i = 0; i < combo.channels[0].samples.size(); ++i) {
    combo.channels[0].samples[i] =
        1.5 * phi.channels[0].samples[i] - 0.5 * psi.channels[0].samples[i];
  }
  const VectorField a1 = duality::apply_symbol(grad, phi);
  const VectorField a2 = duality::apply_symbol(grad, psi);
  const VectorField ac = duality::apply_symbol(grad, combo);
  double lin = 0.0;
  for (int ch = 0; ch < 2; ++ch) {
    for (std::size_t i = 0; i < ac.channels[ch].samples.size(); ++i) {
      lin = std::max(lin, std::abs(ac.channels[ch].samples[i] -
                                   (1.5 * a1.channels[ch].samples[i] -
                                    0.5 * a2.channels[ch].samples[i])));
    }
  }
  CHECK(lin < 1e-11);

  VectorField two(g, 2);
  CHECK_THROWS_AS(duality::apply_symbol(grad, two), ValidationError);
}

TEST_CASE("primal LP: zero data, scaling, and the single-node atom band") {
  const GridSpec g = GridSpec::square(2, 8, 1.0 / 8);
  const DualityConfig cfg = DualityConfig::for_grid(g);

  const auto [zero_value, zero_phi] = duality::primal_value(ScalarField(g), cfg);
  CHECK(zero_value == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(grid_sup_norm(zero_phi) < 1e-7);

  ScalarField gfield(g);
  gfield.at({4, 4, 0}) = 1.0;
  const auto [v1, phi1] = duality::primal_value(gfield, cfg);
  CHECK(v1 > 0.0);
  ScalarField doubled = gfield;
  for (double& v : doubled.samples) v *= 2.0;
  CHECK(duality::primal_value(doubled, cfg).first == doctest::Approx(2.0 * v1).epsilon(1e-6));

  // The returned minimizer satisfies the domination constraint.
  const std::vector<double> riesz =
      spectral::dense_operator_matrix(g, {}, [](const Point3& xi) {
        const double mag = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1]);
        return mag == 0.0 ? 0.0 : 1.0 / mag;
      });
  const std::size_t n = g.node_count();
  for (std::size_t x = 0; x < n; ++x) {
    double acc = 0.0;
    for (std::size_t y = 0; y < n; ++y) acc += riesz[x * n + y] * phi1.samples[y];
    CHECK(acc >= gfield.samples[x] - 1e-7);
  }

  // Comparability band against the radius-h atom at the same node, whose
  // potential dominates the node indicator, making it LP-feasible.
  const ScalarField atom = dorronsoro::make_atom(g.h, {0.5, 0.5, 0.0}, g);
  const double atom_h1 = maximal::h1_norm(atom, cfg.scales);
  CHECK(v1 >= 0.2 * atom_h1 * 0.2);  // broad recorded band, low side
  CHECK(v1 <= 5.0 * atom_h1);
}

TEST_CASE("dual LP: zero and negative data, single-node value, monotonicity") {
  const GridSpec g = GridSpec::square(2, 8, 1.0 / 8);
  const DualityConfig cfg = DualityConfig::for_grid(g);

  ScalarField neg(g, -1.0);
  const auto [vneg, mu_neg] = duality::dual_value(neg, cfg);
  CHECK(vneg == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(mu_neg.total_mass() < 1e-8);

  // Indicator of one node: the binding constraint is the smallest radius,
  // value = min over r of r^{d-1} = h.
  ScalarField ind(g);
  ind.at({4, 4, 0}) = 1.0;
  const double v = duality::dual_value(ind, cfg).first;
  CHECK(v == doctest::Approx(g.h).epsilon(1e-8));

  ScalarField bigger = ind;
  bigger.at({2, 6, 0}) = 0.5;
  CHECK(duality::dual_value(bigger, cfg).first >= v - 1e-10);
}

TEST_CASE("duality gap check on the small grid") {
  const GridSpec g = GridSpec::square(2, 16, 1.0 / 16);
  DualityConfig cfg = DualityConfig::for_grid(g);
  cfg.scales.scales = {g.h};  // single-scale surrogate keeps the LP small
  cfg.scales.radii = {g.h};
  const OperatorSymbol grad = OperatorSymbol::gradient_symbol(2);

  FieldParams p;
  p.sigma = 0.14;
  VectorField phi(g, 1);
  phi.channels[0] = make_test_field(FieldKind::gauss_bump, g, p, 0);

  const Report r = duality::duality_gap_check(phi, grad, cfg);
  CHECK(r.number("primal") > 0.0);
  CHECK(r.number("dual") > 0.0);
  CHECK(r.number("rhs") > 0.0);
  CHECK(r.flag("gap_defined"));

  // Scaling l by 2 scales both optima by 2 and leaves the gap invariant.
  DualityConfig scaled = cfg;
  scaled.l = {2.0};
  const Report r2 = duality::duality_gap_check(phi, grad, scaled);
  CHECK(r2.number("primal") == doctest::Approx(2.0 * r.number("primal")).epsilon(1e-6));
  CHECK(r2.number("dual") == doctest::Approx(2.0 * r.number("dual")).epsilon(1e-6));
  CHECK(r2.number("gap") == doctest::Approx(r.number("gap")).epsilon(1e-6));

  // phi = 0 collapses everything to zero.
  VectorField zero(g, 1);
  const Report rz = duality::duality_gap_check(zero, grad, cfg);
  CHECK(rz.number("primal") == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(rz.number("dual") == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("embedding ratio is invariant under field scaling") {
  const GridSpec g = GridSpec::square(2, 32, 1.0 / 32);
  FieldParams p;
  p.sigma = 0.1;
  VectorField phi(g, 1);
  phi.channels[0] = make_test_field(FieldKind::gauss_bump, g, p, 0);
  const OperatorSymbol grad = OperatorSymbol::gradient_symbol(2);
  const double base = duality::embedding_ratio(phi, grad).number("ratio");
  for (double& v : phi.channels[0].samples) v *= -6.0;
  CHECK(duality::embedding_ratio(phi, grad).number("ratio") ==
        doctest::Approx(base).epsilon(1e-10));
}

TEST_CASE("embedding ratio: stable for the gradient, slowly diverging for |xi|^2") {
  const OperatorSymbol grad = OperatorSymbol::gradient_symbol(2);
  const OperatorSymbol lap = OperatorSymbol::scalar_laplacian_symbol(2);

  double grad_prev = 0.0;
  for (int n : {32, 64}) {
    const GridSpec g = GridSpec::square(2, n, 1.0 / n);
    FieldParams p;
    p.sigma = 0.1;
    VectorField phi(g, 1);
    phi.channels[0] = make_test_field(FieldKind::gauss_bump, g, p, 0);
    const Report r = duality::embedding_ratio(phi, grad);
    CHECK(r.flag("elliptic"));
    CHECK(r.flag("cancelling"));
    CHECK(r.flag("ratio_defined"));
    if (grad_prev > 0.0) {
      CHECK(r.number("ratio") == doctest::Approx(grad_prev).epsilon(0.02));
    }
    grad_prev = r.number("ratio");
  }

  // Near-fundamental bump sharpening with the grid: the borderline failure
  // grows like sqrt(log(1/h)), at least 8% per doubling at these sizes.
  double lap_prev = 0.0;
  for (int n : {32, 64, 128}) {
    const GridSpec g = GridSpec::square(2, n, 1.0 / n);
    ScalarField f(g);
    const double eps = 2.0 * g.h, R0 = 0.3;
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
      const Index3 iv = g.unindex(i);
      const double x = g.h * iv[0] - 0.5, y = g.h * iv[1] - 0.5;
      const double rr = std::sqrt(x * x + y * y);
      const double q = std::log(R0 / std::sqrt(rr * rr + eps * eps));
      f.samples[i] = q > 0 ? q * smooth_step((R0 - rr) / 0.1) : 0.0;
    }
    VectorField phi(g, 1);
    phi.channels[0] = f;
    const Report r = duality::embedding_ratio(phi, lap);
    CHECK(!r.flag("cancelling"));
    if (lap_prev > 0.0) CHECK(r.number("ratio") > 1.08 * lap_prev);
    lap_prev = r.number("ratio");
  }
}
