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

#include "doro/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "doro/error.hpp"
#include "doro/fft.hpp"

namespace doro::spectral {

void SpectralConfig::validate() const {
  if (pad_factor != 2 && pad_factor != 4 && pad_factor != 8) {
    throw ConfigError("pad_factor must be one of {2, 4, 8}, got " + std::to_string(pad_factor));
  }
}

PaddedGrid make_padded_grid(const GridSpec& window, const SpectralConfig& cfg) {
  window.validate();
  cfg.validate();
  PaddedGrid pg;
  pg.padded = window;
  for (int a = 0; a < window.d; ++a) {
    pg.padded.dims[a] = window.dims[a] * cfg.pad_factor;
    pg.offset[a] = window.dims[a] * (cfg.pad_factor - 1) / 2;
  }
  return pg;
}

namespace {

// Angular frequency along one axis for DFT index j, symmetric negative half.
inline double axis_frequency(int j, int n, double h) {
  const int k = j <= n / 2 ? j : j - n;
  return 2.0 * std::numbers::pi * k / (n * h);
}

void multiply_spectrum(std::vector<std::complex<double>>& hat, const GridSpec& padded,
                       const Multiplier& m) {
  const int d = padded.d;
  const double h = padded.h;
  Point3 xi{0.0, 0.0, 0.0};
  if (d == 2) {
    std::size_t idx = 0;
    for (int j0 = 0; j0 < padded.dims[0]; ++j0) {
      xi[0] = axis_frequency(j0, padded.dims[0], h);
      for (int j1 = 0; j1 < padded.dims[1]; ++j1, ++idx) {
        xi[1] = axis_frequency(j1, padded.dims[1], h);
        hat[idx] *= m(xi);
      }
    }
  } else {
    std::size_t idx = 0;
    for (int j0 = 0; j0 < padded.dims[0]; ++j0) {
      xi[0] = axis_frequency(j0, padded.dims[0], h);
      for (int j1 = 0; j1 < padded.dims[1]; ++j1) {
        xi[1] = axis_frequency(j1, padded.dims[1], h);
        for (int j2 = 0; j2 < padded.dims[2]; ++j2, ++idx) {
          xi[2] = axis_frequency(j2, padded.dims[2], h);
          hat[idx] *= m(xi);
        }
      }
    }
  }
}

}  // namespace

void apply_multiplier_inplace(std::vector<double>& padded_samples, const PaddedGrid& pg,
                              const Multiplier& m) {
  const std::size_t total = pg.padded.node_count();
  std::vector<std::complex<double>> buf(total);
  for (std::size_t i = 0; i < total; ++i) buf[i] = padded_samples[i];
  detail::fft(buf.data(), pg.padded.dims, pg.padded.d, false);
  multiply_spectrum(buf, pg.padded, m);
  detail::fft(buf.data(), pg.padded.dims, pg.padded.d, true);
  for (std::size_t i = 0; i < total; ++i) padded_samples[i] = buf[i].real();
}

std::vector<double> apply_multiplier_padded(const ScalarField& f, const SpectralConfig& cfg,
                                            const Multiplier& m, PaddedGrid* pg_out) {
  f.validate();
  const PaddedGrid pg = make_padded_grid(f.grid, cfg);
  std::vector<double> padded(pg.padded.node_count(), 0.0);
  const std::size_t n = f.grid.node_count();
  for (std::size_t i = 0; i < n; ++i) {
    padded[pg.padded_index_of_window(f.grid.unindex(i))] = f.samples[i];
  }
  apply_multiplier_inplace(padded, pg, m);
  if (pg_out != nullptr) *pg_out = pg;
  return padded;
}

ScalarField restrict_to_window(const std::vector<double>& padded_samples, const GridSpec& window,
                               const PaddedGrid& pg) {
  ScalarField out(window);
  const std::size_t n = window.node_count();
  for (std::size_t i = 0; i < n; ++i) {
    out.samples[i] = padded_samples[pg.padded_index_of_window(window.unindex(i))];
  }
  return out;
}

ScalarField apply_multiplier(const ScalarField& f, const SpectralConfig& cfg, const Multiplier& m) {
  PaddedGrid pg;
  const std::vector<double> padded = apply_multiplier_padded(f, cfg, m, &pg);
  return restrict_to_window(padded, f.grid, pg);
}

double riesz_constant(int d, double a) {
  if (d != 2 && d != 3) throw DomainError("riesz_constant: dimension must be 2 or 3");
  if (!(a > 0.0 && a < double(d))) {
    throw DomainError("riesz order a must lie in (0, d), got a = " + std::to_string(a) +
                      ", d = " + std::to_string(d));
  }
  const double pi = std::numbers::pi;
  return std::tgamma((d - a) / 2.0) /
         (std::pow(2.0, a) * std::pow(pi, d / 2.0) * std::tgamma(a / 2.0));
}

ScalarField riesz_potential(const ScalarField& f, double a, const SpectralConfig& cfg) {
  if (!(a > 0.0 && a < double(f.grid.d))) {
    throw DomainError("riesz order a must lie in (0, d), got a = " + std::to_string(a));
  }
  return apply_multiplier(f, cfg, [a](const Point3& xi) {
    const double mag = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    return mag == 0.0 ? 0.0 : std::pow(mag, -a);
  });
}

ScalarField half_laplacian(const ScalarField& f, const SpectralConfig& cfg) {
  return apply_multiplier(f, cfg, [](const Point3& xi) {
    return std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  });
}

ScalarField spectral_derivative(const ScalarField& f, int axis, int order,
                                const SpectralConfig& cfg) {
  f.validate();
  if (axis < 0 || axis >= f.grid.d) throw ValidationError("derivative axis out of range");
  if (order < 0) throw ValidationError("derivative order must be >= 0");
  if (order == 0) return f;

  const PaddedGrid pg = make_padded_grid(f.grid, cfg);
  const std::size_t total = pg.padded.node_count();
  std::vector<std::complex<double>> buf(total, 0.0);
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    buf[pg.padded_index_of_window(f.grid.unindex(i))] = f.samples[i];
  }
  detail::fft(buf.data(), pg.padded.dims, pg.padded.d, false);

  const std::complex<double> unit(0.0, 1.0);
  const GridSpec& p = pg.padded;
  std::size_t idx = 0;
  const int n2 = p.d == 3 ? p.dims[2] : 1;
  for (int j0 = 0; j0 < p.dims[0]; ++j0) {
    for (int j1 = 0; j1 < p.dims[1]; ++j1) {
      for (int j2 = 0; j2 < n2; ++j2, ++idx) {
        const int jaxis = axis == 0 ? j0 : (axis == 1 ? j1 : j2);
        const int n = p.dims[axis];
        if (order % 2 == 1 && jaxis == n / 2) {
          buf[idx] = 0.0;  // unpaired Nyquist mode of an odd multiplier
          continue;
        }
        const double xi = axis_frequency(jaxis, n, p.h);
        buf[idx] *= std::pow(unit * xi, order);
      }
    }
  }
  detail::fft(buf.data(), pg.padded.dims, pg.padded.d, true);

  std::vector<double> real(total);
  for (std::size_t i = 0; i < total; ++i) real[i] = buf[i].real();
  return restrict_to_window(real, f.grid, pg);
}

VectorField gradient(const ScalarField& f) {
  f.validate();
  const GridSpec& g = f.grid;
  VectorField out(g, g.d);
  const std::size_t n = g.node_count();
  for (std::size_t i = 0; i < n; ++i) {
    const Index3 iv = g.unindex(i);
    for (int a = 0; a < g.d; ++a) {
      Index3 up = iv, dn = iv;
      up[a] = std::min(iv[a] + 1, g.dims[a] - 1);
      dn[a] = std::max(iv[a] - 1, 0);
      // Central in the interior, one-sided on the frame.
      out.channels[a].samples[i] =
          (f.samples[g.index(up)] - f.samples[g.index(dn)]) / ((up[a] - dn[a]) * g.h);
    }
  }
  return out;
}

ScalarField riesz_window_inverse(const ScalarField& target, const SpectralConfig& cfg,
                                 double rel_tol, int max_iter) {
  target.validate();
  cfg.validate();
  const GridSpec& window = target.grid;

  const auto riesz_mult = [](const Point3& xi) {
    const double mag = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    return mag == 0.0 ? 0.0 : 1.0 / mag;
  };
  const auto half_mult = [](const Point3& xi) {
    return std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  };
  const auto matvec = [&](const ScalarField& v, const Multiplier& mult) {
    return apply_multiplier(v, cfg, mult);
  };
  const auto dot = [](const ScalarField& a, const ScalarField& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) acc += a.samples[i] * b.samples[i];
    return acc;
  };

  double target_norm = std::sqrt(dot(target, target));
  ScalarField x(window);
  if (target_norm == 0.0) return x;

  ScalarField r = target;                       // residual (x = 0 start)
  ScalarField z = matvec(r, half_mult);         // preconditioned residual
  ScalarField p = z;
  double rz = dot(r, z);
  for (int iter = 0; iter < max_iter; ++iter) {
    const ScalarField mp = matvec(p, riesz_mult);
    const double alpha = rz / dot(p, mp);
    double r2 = 0.0;
    for (std::size_t i = 0; i < x.samples.size(); ++i) {
      x.samples[i] += alpha * p.samples[i];
      r.samples[i] -= alpha * mp.samples[i];
      r2 += r.samples[i] * r.samples[i];
    }
    if (std::sqrt(r2) <= rel_tol * target_norm) return x;
    z = matvec(r, half_mult);
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < p.samples.size(); ++i) {
      p.samples[i] = z.samples[i] + beta * p.samples[i];
    }
  }
  throw Error("riesz_window_inverse: conjugate gradient failed to converge");
}

std::vector<double> dense_operator_matrix(const GridSpec& window, const SpectralConfig& cfg,
                                          const Multiplier& m) {
  window.validate();
  const PaddedGrid pg = make_padded_grid(window, cfg);
  // Response to a unit sample at the window origin node; by translation
  // invariance on the torus this column generates the whole matrix.
  std::vector<double> kernel(pg.padded.node_count(), 0.0);
  kernel[pg.padded_index_of_window({0, 0, 0})] = 1.0;
  apply_multiplier_inplace(kernel, pg, m);

  const std::size_t n = window.node_count();
  std::vector<double> mat(n * n);
  for (std::size_t row = 0; row < n; ++row) {
    const Index3 ix = window.unindex(row);
    for (std::size_t col = 0; col < n; ++col) {
      const Index3 iy = window.unindex(col);
      Index3 iv{0, 0, 0};
      for (int a = 0; a < window.d; ++a) {
        int w = pg.offset[a] + ix[a] - iy[a];
        const int np = pg.padded.dims[a];
        w %= np;
        if (w < 0) w += np;
        iv[a] = w;
      }
      mat[row * n + col] = kernel[pg.padded.index(iv)];
    }
  }
  return mat;
}

}  // namespace doro::spectral
