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

#include "doro/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "doro/error.hpp"
#include "doro/fft.hpp"

namespace doro::duality {

void OperatorSymbol::validate() const {
  if (d != 2 && d != 3) throw ValidationError("symbol dimension must be 2 or 3");
  if (m < 1) throw ValidationError("symbol order m must be >= 1");
  if (dimE < 1 || dimF < 1) throw ValidationError("dimE and dimF must be >= 1");
  if (terms.empty()) throw ValidationError("symbol needs at least one multi-index term");
  bool nonzero = false;
  for (const Term& t : terms) {
    int total = 0;
    for (int a = 0; a < d; ++a) {
      if (t.beta[a] < 0) throw ValidationError("multi-index entries must be >= 0");
      total += t.beta[a];
    }
    for (int a = d; a < 3; ++a) {
      if (t.beta[a] != 0) throw ValidationError("multi-index has entries beyond dimension d");
    }
    if (total != m) {
      throw ValidationError("multi-index |beta| = " + std::to_string(total) +
                            " does not match the symbol order m = " + std::to_string(m));
    }
    if (t.matrix.size() != static_cast<std::size_t>(dimE) * dimF) {
      throw ValidationError("coefficient matrix must be dimF x dimE");
    }
    for (double v : t.matrix) {
      if (!std::isfinite(v)) throw ValidationError("coefficient entries must be finite");
      if (v != 0.0) nonzero = true;
    }
  }
  if (!nonzero) throw ValidationError("symbol must have a nonzero coefficient");
}

void OperatorSymbol::evaluate(const Point3& xi, double* out) const {
  const std::size_t sz = static_cast<std::size_t>(dimE) * dimF;
  std::fill(out, out + sz, 0.0);
  for (const Term& t : terms) {
    double factor = 1.0;
    for (int a = 0; a < d; ++a) {
      for (int p = 0; p < t.beta[a]; ++p) factor *= xi[a];
    }
    if (factor == 0.0) continue;
    for (std::size_t k = 0; k < sz; ++k) out[k] += factor * t.matrix[k];
  }
}

OperatorSymbol OperatorSymbol::gradient_symbol(int d) {
  OperatorSymbol A;
  A.d = d;
  A.m = 1;
  A.dimE = 1;
  A.dimF = d;
  for (int a = 0; a < d; ++a) {
    Term t;
    t.beta = {0, 0, 0};
    t.beta[a] = 1;
    t.matrix.assign(static_cast<std::size_t>(d), 0.0);
    t.matrix[a] = 1.0;
    A.terms.push_back(std::move(t));
  }
  A.validate();
  return A;
}

OperatorSymbol OperatorSymbol::scalar_laplacian_symbol(int d) {
  OperatorSymbol A;
  A.d = d;
  A.m = 2;
  A.dimE = 1;
  A.dimF = 1;
  for (int a = 0; a < d; ++a) {
    Term t;
    t.beta = {0, 0, 0};
    t.beta[a] = 2;
    t.matrix = {1.0};
    A.terms.push_back(std::move(t));
  }
  A.validate();
  return A;
}

OperatorSymbol OperatorSymbol::parse_text(const std::string& text) {
  OperatorSymbol A;
  A.terms.clear();
  bool have_dims = false;
  int order = -1;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    line = line.substr(start);

    if (line.rfind("dims:", 0) == 0) {
      std::istringstream ss(line.substr(5));
      if (!(ss >> A.dimE >> A.dimF)) {
        throw FormatError("symbol line " + std::to_string(lineno) + ": dims needs dimE dimF");
      }
      have_dims = true;
      continue;
    }
    if (line.rfind("beta:", 0) != 0) {
      throw FormatError("symbol line " + std::to_string(lineno) +
                        ": expected 'dims:' or 'beta:'");
    }
    const std::size_t bar = line.find('|');
    if (bar == std::string::npos || line.find("matrix:", bar) == std::string::npos) {
      throw FormatError("symbol line " + std::to_string(lineno) +
                        ": expected 'beta: ... | matrix: ...'");
    }
    Term t;
    {
      std::istringstream ss(line.substr(5, bar - 5));
      std::vector<int> betas;
      int b;
      while (ss >> b) betas.push_back(b);
      if (betas.size() != 2 && betas.size() != 3) {
        throw FormatError("symbol line " + std::to_string(lineno) +
                          ": beta needs 2 or 3 entries");
      }
      if (A.terms.empty()) {
        A.d = static_cast<int>(betas.size());
      } else if (static_cast<int>(betas.size()) != A.d) {
        throw FormatError("symbol line " + std::to_string(lineno) + ": inconsistent dimension");
      }
      int total = 0;
      for (std::size_t a = 0; a < betas.size(); ++a) {
        t.beta[a] = betas[a];
        total += betas[a];
      }
      if (order < 0) {
        order = total;
      } else if (total != order) {
        throw FormatError("symbol line " + std::to_string(lineno) +
                          ": |beta| inconsistent with earlier terms");
      }
    }
    {
      const std::size_t mat = line.find("matrix:", bar) + 7;
      std::istringstream ss(line.substr(mat));
      double v;
      while (ss >> v) t.matrix.push_back(v);
    }
    A.terms.push_back(std::move(t));
  }
  if (A.terms.empty()) throw FormatError("symbol file has no terms");
  if (!have_dims) {
    // Without a dims header only scalar E is unambiguous.
    A.dimE = 1;
    A.dimF = static_cast<int>(A.terms.front().matrix.size());
  }
  A.m = order;
  A.validate();
  return A;
}

OperatorSymbol OperatorSymbol::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open symbol file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

std::string OperatorSymbol::to_text() const {
  std::string out = "dims: " + std::to_string(dimE) + " " + std::to_string(dimF) + "\n";
  for (const Term& t : terms) {
    out += "beta:";
    for (int a = 0; a < d; ++a) out += " " + std::to_string(t.beta[a]);
    out += " | matrix:";
    for (double v : t.matrix) out += " " + format_number(v);
    out += "\n";
  }
  return out;
}

namespace {

// splitmix64, as in the corpus generator.
std::uint64_t mix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Point3> sphere_samples(int d, int n, std::uint64_t seed) {
  std::uint64_t state = seed + 0x51ed2701ULL;
  const double jitter = static_cast<double>(mix(state) >> 11) * 0x1.0p-53;
  std::vector<Point3> pts;
  pts.reserve(n + 8);
  // Canonical directions come first and are seed-independent: axis-aligned
  // degeneracies (the classic xi_1 * e symbol) must be caught by every
  // reseeded run exactly.
  const double s2 = 1.0 / std::sqrt(2.0);
  if (d == 2) {
    pts.push_back({1.0, 0.0, 0.0});
    pts.push_back({0.0, 1.0, 0.0});
    pts.push_back({s2, s2, 0.0});
    pts.push_back({s2, -s2, 0.0});
    for (int i = 0; i < n; ++i) {
      const double phi = 2.0 * std::numbers::pi * (i + jitter) / n;
      pts.push_back({std::cos(phi), std::sin(phi), 0.0});
    }
  } else {
    const double s3 = 1.0 / std::sqrt(3.0);
    pts.push_back({1.0, 0.0, 0.0});
    pts.push_back({0.0, 1.0, 0.0});
    pts.push_back({0.0, 0.0, 1.0});
    pts.push_back({s2, s2, 0.0});
    pts.push_back({s2, 0.0, -s2});
    pts.push_back({0.0, s2, s2});
    pts.push_back({s3, -s3, s3});
    pts.push_back({s3, s3, s3});
    // Fibonacci lattice with a seeded longitude offset.
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / n;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * i + 2.0 * std::numbers::pi * jitter;
      pts.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
  }
  return pts;
}

using Matrix = Eigen::MatrixXd;

Matrix symbol_matrix(const OperatorSymbol& A, const Point3& xi) {
  std::vector<double> buf(static_cast<std::size_t>(A.dimE) * A.dimF);
  A.evaluate(xi, buf.data());
  Matrix M(A.dimF, A.dimE);
  for (int r = 0; r < A.dimF; ++r) {
    for (int c = 0; c < A.dimE; ++c) M(r, c) = buf[static_cast<std::size_t>(r) * A.dimE + c];
  }
  return M;
}

constexpr double kRankTol = 1e-8;

// Orthonormal basis of the column space, rank cut at kRankTol relative to
// the largest singular value.
Matrix column_space(const Matrix& M) {
  if (M.cols() == 0) return Matrix(M.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? sv(0) * kRankTol : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

// Intersection of two subspaces given by orthonormal bases U, V: vectors
// U a = V b come from the null space of [U, -V].
Matrix intersect_subspaces(const Matrix& U, const Matrix& V) {
  if (U.cols() == 0 || V.cols() == 0) return Matrix(U.rows(), 0);
  Matrix M(U.rows(), U.cols() + V.cols());
  M << U, -V;
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = (sv.size() > 0 ? sv(0) : 0.0) * kRankTol + 1e-300;
  std::vector<int> null_cols;
  for (int i = 0; i < svd.matrixV().cols(); ++i) {
    const double s = i < sv.size() ? sv(i) : 0.0;
    if (s <= cutoff) null_cols.push_back(i);
  }
  if (null_cols.empty()) return Matrix(U.rows(), 0);
  Matrix reps(U.rows(), static_cast<int>(null_cols.size()));
  for (std::size_t k = 0; k < null_cols.size(); ++k) {
    reps.col(static_cast<int>(k)) = U * svd.matrixV().col(null_cols[k]).head(U.cols());
  }
  return column_space(reps);
}

}  // namespace

Report is_elliptic(const OperatorSymbol& A, int n_samples, std::uint64_t seed) {
  A.validate();
  if (n_samples < 100) throw ValidationError("ellipticity check needs at least 100 samples");
  double min_sv = std::numeric_limits<double>::infinity();
  double max_sv = 0.0;
  for (const Point3& xi : sphere_samples(A.d, n_samples, seed)) {
    Eigen::JacobiSVD<Matrix> svd(symbol_matrix(A, xi));
    const auto& sv = svd.singularValues();
    min_sv = std::min(min_sv, sv.size() > 0 ? sv(sv.size() - 1) : 0.0);
    max_sv = std::max(max_sv, sv.size() > 0 ? sv(0) : 0.0);
  }
  // A map injective in e needs dimF >= dimE regardless of the samples.
  if (A.dimF < A.dimE) min_sv = 0.0;
  Report report;
  report.set("min_singular_value", min_sv);
  report.set("max_singular_value", max_sv);
  report.set("elliptic", max_sv > 0.0 && min_sv > kRankTol * max_sv);
  return report;
}

Report is_cancelling(const OperatorSymbol& A, int n_samples, std::uint64_t seed) {
  A.validate();
  if (n_samples < 100) throw ValidationError("cancellation check needs at least 100 samples");

  const Report elliptic_report = is_elliptic(A, std::max(100, n_samples / 4), seed);
  const bool elliptic = elliptic_report.flag("elliptic");

  const std::vector<Point3> samples = sphere_samples(A.d, n_samples, seed);
  Matrix inter = column_space(symbol_matrix(A, samples.front()));
  for (std::size_t i = 1; i < samples.size() && inter.cols() > 0; ++i) {
    inter = intersect_subspaces(inter, column_space(symbol_matrix(A, samples[i])));
  }

  Report report;
  report.set("cancelling", inter.cols() == 0);
  report.set("residual_dimension", double(inter.cols()));
  report.set("elliptic", elliptic);
  return report;
}

VectorField apply_symbol(const OperatorSymbol& A, const VectorField& phi,
                         const spectral::SpectralConfig& cfg) {
  A.validate();
  phi.validate();
  cfg.validate();
  if (phi.grid.d != A.d) throw ValidationError("field dimension does not match the symbol");
  if (phi.channel_count() != A.dimE) {
    throw ValidationError("apply_symbol: field has " + std::to_string(phi.channel_count()) +
                          " channels, symbol expects dimE = " + std::to_string(A.dimE));
  }

  const spectral::PaddedGrid pg = spectral::make_padded_grid(phi.grid, cfg);
  const GridSpec& p = pg.padded;
  const std::size_t total = p.node_count();

  std::vector<std::vector<std::complex<double>>> ehat(
      A.dimE, std::vector<std::complex<double>>(total, 0.0));
  for (int e = 0; e < A.dimE; ++e) {
    const ScalarField& ch = phi.channels[e];
    for (std::size_t i = 0; i < ch.samples.size(); ++i) {
      ehat[e][pg.padded_index_of_window(phi.grid.unindex(i))] = ch.samples[i];
    }
    detail::fft(ehat[e].data(), p.dims, p.d, false);
  }

  // (i xi)^beta = i^m xi^beta for every |beta| = m.
  std::complex<double> im(1.0, 0.0);
  for (int k = 0; k < A.m % 4; ++k) im *= std::complex<double>(0.0, 1.0);

  std::vector<std::vector<std::complex<double>>> fhat(
      A.dimF, std::vector<std::complex<double>>(total, 0.0));
  std::vector<double> mat(static_cast<std::size_t>(A.dimE) * A.dimF);

  const auto freq = [&](int j, int n) {
    const int k = j <= n / 2 ? j : j - n;
    return 2.0 * std::numbers::pi * k / (n * p.h);
  };
  const bool odd_order = A.m % 2 == 1;

  std::size_t idx = 0;
  const int n2 = p.d == 3 ? p.dims[2] : 1;
  for (int j0 = 0; j0 < p.dims[0]; ++j0) {
    for (int j1 = 0; j1 < p.dims[1]; ++j1) {
      for (int j2 = 0; j2 < n2; ++j2, ++idx) {
        if (odd_order &&
            (j0 == p.dims[0] / 2 || j1 == p.dims[1] / 2 || (p.d == 3 && j2 == p.dims[2] / 2))) {
          continue;  // unpaired Nyquist modes of an odd multiplier stay zero
        }
        const Point3 xi{freq(j0, p.dims[0]), freq(j1, p.dims[1]),
                        p.d == 3 ? freq(j2, p.dims[2]) : 0.0};
        A.evaluate(xi, mat.data());
        for (int f = 0; f < A.dimF; ++f) {
          std::complex<double> acc(0.0, 0.0);
          for (int e = 0; e < A.dimE; ++e) {
            const double a = mat[static_cast<std::size_t>(f) * A.dimE + e];
            if (a != 0.0) acc += a * ehat[e][idx];
          }
          fhat[f][idx] = im * acc;
        }
      }
    }
  }

  VectorField out(phi.grid, A.dimF);
  for (int f = 0; f < A.dimF; ++f) {
    detail::fft(fhat[f].data(), p.dims, p.d, true);
    double max_re = 0.0, max_im = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      max_re = std::max(max_re, std::abs(fhat[f][i].real()));
      max_im = std::max(max_im, std::abs(fhat[f][i].imag()));
    }
    if (max_im > 1e-10 * std::max(1.0, max_re)) {
      throw Error("apply_symbol produced a non-real field (imaginary residue " +
                  std::to_string(max_im) + ")");
    }
    ScalarField& ch = out.channels[f];
    for (std::size_t i = 0; i < ch.samples.size(); ++i) {
      ch.samples[i] = fhat[f][pg.padded_index_of_window(phi.grid.unindex(i))].real();
    }
  }
  return out;
}

}  // namespace doro::duality
