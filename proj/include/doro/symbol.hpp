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

#ifndef DORO_SYMBOL_HPP
#define DORO_SYMBOL_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "doro/grid.hpp"
#include "doro/report.hpp"
#include "doro/spectral.hpp"

namespace doro::duality {

/// Constant-coefficient homogeneous operator A(partial) of order m between
/// E- and F-valued fields: A(xi, e) = sum over |beta| = m of
/// xi^beta * coeffs[beta] e, with coeffs[beta] a real dimF x dimE matrix.
struct OperatorSymbol {
  int d = 2;
  int m = 1;
  int dimE = 1;
  int dimF = 1;

  struct Term {
    Index3 beta{0, 0, 0};
    std::vector<double> matrix;  // dimF x dimE, row-major
  };
  std::vector<Term> terms;

  void validate() const;

  /// Real matrix A(xi, .) at a real frequency, row-major dimF x dimE.
  void evaluate(const Point3& xi, double* out) const;

  /// The gradient symbol A(xi, e) = xi e (m = 1, dimE = 1, dimF = d).
  static OperatorSymbol gradient_symbol(int d);

  /// The scalar symbol A(xi, e) = |xi|^2 e (m = 2, dimE = dimF = 1);
  /// elliptic but not cancelling.
  static OperatorSymbol scalar_laplacian_symbol(int d);

  /// Plain-text form: an optional "dims: dimE dimF" line followed by
  /// "beta: b1 ... bd | matrix: ..." lines; '#' starts a comment.
  static OperatorSymbol parse_text(const std::string& text);
  static OperatorSymbol load(const std::filesystem::path& path);
  std::string to_text() const;
};

/// Samples xi quasi-uniformly on the unit sphere and reports the smallest
/// singular value of A(xi, .); elliptic iff it stays above 1e-8 relative to
/// the largest one observed. Keys: elliptic, min_singular_value,
/// max_singular_value.
Report is_elliptic(const OperatorSymbol& A, int n_samples = 512, std::uint64_t seed = 0);

/// Intersects the ranges A(xi, E) over the sphere samples; cancelling iff
/// the running intersection ends zero-dimensional. Keys: cancelling,
/// residual_dimension, elliptic (a quick precondition check; a false value
/// flags the verdict rather than erroring).
Report is_cancelling(const OperatorSymbol& A, int n_samples = 512, std::uint64_t seed = 0);

/// A(partial) phi via the padded spectral calculus A(i xi, .); the input
/// must have dimE channels and the output has dimF. Coefficients are real,
/// so the imaginary residue is checked (< 1e-10 relative) and discarded.
VectorField apply_symbol(const OperatorSymbol& A, const VectorField& phi,
                         const spectral::SpectralConfig& cfg = {});

}  // namespace doro::duality

#endif  // DORO_SYMBOL_HPP
