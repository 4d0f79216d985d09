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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "doro/capacity.hpp"
#include "doro/corpus.hpp"
#include "doro/dorronsoro.hpp"
#include "doro/duality.hpp"
#include "doro/error.hpp"
#include "doro/io.hpp"
#include "doro/maximal.hpp"
#include "doro/report.hpp"
#include "doro/spectral.hpp"
#include "doro/symbol.hpp"

namespace {

using namespace doro;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

void emit_report(const Report& report, const std::string& format, const std::string& out_path) {
  const std::string body = format == "json" ? report.to_json() + "\n" : report.to_text();
  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write report to " + out_path);
    out << body;
  }
}

int verdict_exit(const Report& report) {
  return report.all_verdicts_pass() ? kExitPass : kExitCheckFailed;
}

void check_run_limits(int resolution, int n_levels) {
  if (resolution < 16 || resolution > 512 || (resolution & (resolution - 1)) != 0) {
    throw ValidationError("resolution must be a power of two in [16, 512]");
  }
  if (n_levels < 8 || n_levels > 256) {
    throw ValidationError("n-levels must lie in [8, 256]");
  }
}

// splitmix64 matching the corpus generator.
std::uint64_t mix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double u01(std::uint64_t& state) {
  return static_cast<double>(mix64(state) >> 11) * 0x1.0p-53;
}

DiscreteMeasure random_measure(const GridSpec& grid, std::uint64_t seed) {
  DiscreteMeasure mu(grid);
  std::uint64_t state = seed * 0x2545f4914f6cdd1dULL + 0x1234567ULL;
  const int atoms = 3 + static_cast<int>(mix64(state) % 10);
  for (int k = 0; k < atoms; ++k) {
    Index3 iv{0, 0, 0};
    for (int a = 0; a < grid.d; ++a) {
      const int lo = grid.dims[a] / 4;
      const int span = grid.dims[a] / 2;
      iv[a] = lo + static_cast<int>(mix64(state) % static_cast<std::uint64_t>(span));
    }
    mu.masses[grid.index(iv)] += 0.2 + u01(state);
  }
  return mu;
}

int run_gen(const std::string& kind_name, int resolution, int d, std::uint64_t seed,
            const std::string& out_path, const std::string& format, const FieldParams& params) {
  check_run_limits(resolution, 8);
  const GridSpec grid = GridSpec::square(d, resolution, 1.0 / resolution);
  const ScalarField f = make_test_field(field_kind_from_name(kind_name), grid, params, seed);
  save_field(f, out_path, field_format_from_name(format));
  std::cout << "wrote " << out_path << " (" << kind_name << ", " << resolution << "^" << d
            << ")\n";
  return kExitPass;
}

int run_construct(const std::string& input, const std::string& format, double spacing,
                  int n_levels, int pad, const std::string& out_dir,
                  const std::string& report_format) {
  check_run_limits(16, n_levels);
  const ScalarField f = load_field(input, field_format_from_name(format), spacing);
  for (double v : f.samples) {
    if (v < 0.0) {
      std::cerr << "input field has negative values; decompose the positive part "
                   "f_pos = max(f, 0) and handle the negative part separately\n";
      return kExitUsage;
    }
  }
  const spectral::SpectralConfig scfg{pad};
  const dorronsoro::DecompositionResult result = dorronsoro::decompose(f, n_levels, {}, scfg);
  Report report = dorronsoro::verify_decomposition(f, result, scfg);
  report.set("delta", result.delta);
  report.set("levels", double(result.levels.size()));

  std::filesystem::create_directories(out_dir);
  save_field(result.F, std::filesystem::path(out_dir) / "F.doro", FieldFormat::binary);
  {
    std::ofstream csv(std::filesystem::path(out_dir) / "levels.csv");
    csv << "level,cover_cost,cover_balls\n";
    for (const auto& lc : result.levels) {
      csv << format_number(lc.level) << ',' << format_number(lc.cover.cost) << ','
          << lc.cover.balls.size() << '\n';
    }
  }
  {
    std::ofstream csv(std::filesystem::path(out_dir) / "cover.csv");
    csv << "level";
    for (int a = 0; a < f.grid.d; ++a) csv << ",c" << a;
    csv << ",radius\n";
    for (const auto& lc : result.levels) {
      for (const auto& b : lc.cover.balls) {
        csv << format_number(lc.level);
        for (int a = 0; a < f.grid.d; ++a) csv << ',' << format_number(b.center[a]);
        csv << ',' << format_number(b.radius) << '\n';
      }
    }
  }
  const std::string ext = report_format == "json" ? ".json" : ".txt";
  emit_report(report, report_format, (std::filesystem::path(out_dir) / ("report" + ext)).string());
  std::cout << report.to_text();
  return verdict_exit(report);
}

int run_boxing(int resolution, const std::string& out_path, const std::string& report_format) {
  check_run_limits(resolution, 8);
  const std::vector<ShapeCase> shapes = boxing_shape_corpus(resolution);
  Report report;
  double max_ratio = 0.0;
  bool stable = true;
  // Shapes come in x1/x2 scale pairs sharing a name prefix.
  for (std::size_t i = 0; i + 5 < shapes.size(); ++i) {
    const ShapeCase& small = shapes[i];
    if (small.name.find("_x1") == std::string::npos) continue;
    const ShapeCase& big = shapes[i + 5];
    const Report r1 = capacity::boxing_check(small.field, small.level);
    const Report r2 = capacity::boxing_check(big.field, big.level);
    const double ratio1 = r1.number("ratio");
    const double ratio2 = r2.number("ratio");
    const std::string base = small.name.substr(0, small.name.size() - 3);
    report.set(base + "_ratio_x1", ratio1);
    report.set(base + "_ratio_x2", ratio2);
    const double drift = std::abs(ratio2 / ratio1 - 1.0);
    report.set(base + "_scale_drift", drift);
    stable = stable && drift < 0.15;
    max_ratio = std::max(max_ratio, std::max(ratio1, ratio2));
  }
  report.set("max_ratio", max_ratio);
  report.set("scale_stability_pass", stable);
  emit_report(report, report_format, out_path);
  if (!out_path.empty()) std::cout << report.to_text();
  return verdict_exit(report);
}

int run_adams(std::uint64_t seed, int count, double a, int resolution, int pad,
              const std::string& out_path, const std::string& report_format) {
  check_run_limits(resolution, 8);
  const GridSpec grid = GridSpec::square(2, resolution, 1.0 / resolution);
  const maximal::MaximalConfig cfg_m = maximal::MaximalConfig::for_grid(grid);
  const spectral::SpectralConfig cfg_s{pad};

  Report report;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  double worst_scale_drift = 0.0;
  for (int i = 0; i < count; ++i) {
    const DiscreteMeasure mu = random_measure(grid, seed + static_cast<std::uint64_t>(i));
    const Report r = maximal::adams_check(mu, a, cfg_m, cfg_s);
    const double ratio = r.number("ratio_upper");
    report.set("ratio_" + std::to_string(i), ratio);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);

    DiscreteMeasure scaled = mu;
    for (double& m : scaled.masses) m *= 10.0;
    const Report rs = maximal::adams_check(scaled, a, cfg_m, cfg_s);
    worst_scale_drift =
        std::max(worst_scale_drift, std::abs(rs.number("ratio_upper") / ratio - 1.0));
  }
  report.set("ratio_min", lo);
  report.set("ratio_max", hi);
  report.set("band_width", hi / lo);
  report.set("band_pass", hi / lo < 50.0);
  report.set("scale_invariance_drift", worst_scale_drift);
  report.set("scale_invariance_pass", worst_scale_drift < 1e-9);
  emit_report(report, report_format, out_path);
  if (!out_path.empty()) std::cout << report.to_text();
  return verdict_exit(report);
}

int run_duality(int grid_n, int count, int pad, const std::string& out_path,
                const std::string& report_format) {
  const GridSpec grid = GridSpec::square(2, grid_n, 1.0 / grid_n);
  const duality::DualityConfig cfg = duality::DualityConfig::for_grid(grid);
  const spectral::SpectralConfig scfg{pad};
  const duality::OperatorSymbol A = duality::OperatorSymbol::gradient_symbol(2);

  Report report;
  double k_min = std::numeric_limits<double>::infinity(), k_max = 0.0;
  double kp_min = std::numeric_limits<double>::infinity(), kp_max = 0.0;
  for (int i = 0; i < count; ++i) {
    FieldParams params;
    ScalarField f;
    switch (i % 3) {
      case 0:
        params.sigma = 0.12 + 0.02 * (i % 2);
        f = make_test_field(FieldKind::gauss_bump, grid, params, 0);
        break;
      case 1:
        params.sigma = 0.09;
        params.separation = 0.3;
        f = make_test_field(FieldKind::two_bumps, grid, params, 0);
        break;
      default:
        params.modes = 2;
        f = make_test_field(FieldKind::random_smooth, grid, params, 31 + i);
        break;
    }
    VectorField phi(grid, 1);
    phi.channels[0] = f;
    const Report r = duality::duality_gap_check(phi, A, cfg, scfg);
    const double primal = r.number("primal");
    const double dual = r.number("dual");
    report.set("primal_" + std::to_string(i), primal);
    report.set("dual_" + std::to_string(i), dual);
    if (primal > 0.0 && dual > 0.0) {
      k_min = std::min(k_min, dual / primal);
      k_max = std::max(k_max, dual / primal);
      kp_min = std::min(kp_min, primal / dual);
      kp_max = std::max(kp_max, primal / dual);
    }
  }
  if (k_max > 0.0) {
    report.set("K_dual_over_primal", k_max);
    report.set("K_primal_over_dual", kp_max);
    report.set("dual_over_primal_band", k_max / k_min);
    report.set("primal_over_dual_band", kp_max / kp_min);
    report.set("dual_band_pass", k_max / k_min < 3.0);
    report.set("primal_band_pass", kp_max / kp_min < 3.0);
  } else {
    report.set("band_defined", false);
    report.set("dual_band_pass", false);
    report.set("primal_band_pass", false);
  }
  emit_report(report, report_format, out_path);
  if (!out_path.empty()) std::cout << report.to_text();
  return verdict_exit(report);
}

int run_lorentz(int resolution, const std::string& out_path, const std::string& report_format) {
  check_run_limits(resolution, 8);
  Report report;
  double worst = 0.0;
  const double p = 2.0;  // d/(d-1) for d = 2
  for (const NamedField& nf : lorentz_corpus(resolution)) {
    const double lorentz = maximal::lorentz_norm(nf.field, p);
    const double tv = grid_integral(spectral::gradient(nf.field), 1.0);
    const double ratio = lorentz / tv;
    report.set(nf.name + "_ratio", ratio);
    worst = std::max(worst, ratio);
  }
  report.set("max_ratio", worst);
  // 1/(2 sqrt(pi)) ~ 0.2821 is the sharp radial value; 0.32 allows the
  // discretization slack.
  report.set("embedding_pass", worst <= 0.32);
  emit_report(report, report_format, out_path);
  if (!out_path.empty()) std::cout << report.to_text();
  return verdict_exit(report);
}

int run_symbol_check(const std::string& path, int samples, const std::string& out_path,
                     const std::string& report_format) {
  const duality::OperatorSymbol A = duality::OperatorSymbol::load(path);
  bool first_elliptic = false, first_cancelling = false;
  bool stable = true;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Report e = duality::is_elliptic(A, samples, seed);
    const Report c = duality::is_cancelling(A, samples, seed);
    if (seed == 0) {
      first_elliptic = e.flag("elliptic");
      first_cancelling = c.flag("cancelling");
    } else {
      stable = stable && e.flag("elliptic") == first_elliptic &&
               c.flag("cancelling") == first_cancelling;
    }
  }
  Report report;
  report.set("elliptic", first_elliptic);
  report.set("cancelling", first_cancelling);
  report.set("classification_stable_pass", stable);
  std::cout << "elliptic: " << (first_elliptic ? "true" : "false")
            << ", cancelling: " << (first_cancelling ? "true" : "false") << "\n";
  emit_report(report, report_format, out_path);
  return verdict_exit(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructive H^1 majorant toolkit: builds F with I_1[F] >= f and desk-scale "
               "checkers for the boxing, coarea, Adams, Lorentz and duality inequalities"};
  app.require_subcommand(1);

  std::string report_format = "text";
  app.add_option("--report-format", report_format, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // gen
  auto* gen = app.add_subcommand("gen", "generate a corpus field");
  std::string gen_kind = "gauss_bump", gen_out = "field.doro", gen_format = "binary";
  int gen_resolution = 128, gen_d = 2;
  std::uint64_t gen_seed = 0;
  FieldParams gen_params;
  bool gen_signed = false;
  gen->add_option("--kind", gen_kind, "gauss_bump|smoothed_disk|two_bumps|random_smooth|annulus");
  gen->add_option("--resolution", gen_resolution, "per-axis sample count (power of two)");
  gen->add_option("--d", gen_d, "dimension (2 or 3)");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "output path");
  gen->add_option("--format", gen_format, "binary or csv");
  gen->add_option("--sigma", gen_params.sigma, "bump width / L");
  gen->add_option("--radius", gen_params.radius, "disk radius / L");
  gen->add_option("--inner", gen_params.inner_radius, "annulus inner radius / L");
  gen->add_option("--transition", gen_params.transition, "edge width / L");
  gen->add_option("--aspect", gen_params.aspect, "axis-0 stretch");
  gen->add_option("--separation", gen_params.separation, "two-bump distance / L");
  gen->add_option("--amplitude", gen_params.amplitude, "peak value");
  gen->add_option("--modes", gen_params.modes, "random_smooth highest wavenumber");
  gen->add_flag("--signed", gen_signed, "two_bumps: opposite-sign pair");

  // construct
  auto* construct = app.add_subcommand("construct", "decompose a field and verify the result");
  std::string con_input, con_out = "construct_out", con_format = "binary";
  double con_spacing = 1.0;
  int con_levels = 32, con_pad = 4;
  construct->add_option("--input", con_input, "input field path")->required();
  construct->add_option("--format", con_format, "binary or csv");
  construct->add_option("--spacing", con_spacing, "grid spacing for csv inputs");
  construct->add_option("--n-levels", con_levels, "number of levels");
  construct->add_option("--pad", con_pad, "spectral pad factor (2, 4, 8)");
  construct->add_option("--out", con_out, "output directory");

  // boxing
  auto* boxing = app.add_subcommand("boxing", "boxing-inequality sweep over the shape corpus");
  int box_resolution = 128;
  std::string box_out, box_shapes = "all";
  boxing->add_option("--resolution", box_resolution, "grid resolution");
  boxing->add_option("--shapes", box_shapes, "shape selection (all)");
  boxing->add_option("--out", box_out, "report output path");

  // adams
  auto* adams = app.add_subcommand("adams", "two-sided BMO / maximal comparison on random measures");
  std::uint64_t adams_seed = 1;
  int adams_count = 20, adams_resolution = 64, adams_pad = 4;
  double adams_a = 1.0;
  std::string adams_out;
  adams->add_option("--seed", adams_seed, "seed of the measure corpus");
  adams->add_option("--count", adams_count, "number of measures");
  adams->add_option("--a", adams_a, "potential / maximal order");
  adams->add_option("--resolution", adams_resolution, "grid resolution");
  adams->add_option("--pad", adams_pad, "spectral pad factor");
  adams->add_option("--out", adams_out, "report output path");

  // duality
  auto* duality_cmd = app.add_subcommand("duality", "paired LP optima on the small grid");
  int dual_grid = 16, dual_count = 10, dual_pad = 4;
  std::string dual_out;
  duality_cmd->add_option("--grid", dual_grid, "LP grid nodes per axis (8 or 16)");
  duality_cmd->add_option("--count", dual_count, "number of corpus fields");
  duality_cmd->add_option("--pad", dual_pad, "spectral pad factor");
  duality_cmd->add_option("--out", dual_out, "report output path");

  // lorentz
  auto* lorentz = app.add_subcommand("lorentz", "Lorentz embedding ratios over the corpus");
  int lor_resolution = 128;
  std::string lor_out;
  lorentz->add_option("--resolution", lor_resolution, "grid resolution");
  lorentz->add_option("--out", lor_out, "report output path");

  // symbol-check
  auto* symbol = app.add_subcommand("symbol-check", "elliptic / cancelling classification");
  std::string sym_path;
  int sym_samples = 512;
  std::string sym_out;
  symbol->add_option("--symbol", sym_path, "symbol file")->required();
  symbol->add_option("--samples", sym_samples, "sphere samples per run");
  symbol->add_option("--out", sym_out, "report output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      gen_params.signed_pair = gen_signed;
      return run_gen(gen_kind, gen_resolution, gen_d, gen_seed, gen_out, gen_format, gen_params);
    }
    if (construct->parsed()) {
      return run_construct(con_input, con_format, con_spacing, con_levels, con_pad, con_out,
                           report_format);
    }
    if (boxing->parsed()) return run_boxing(box_resolution, box_out, report_format);
    if (adams->parsed()) {
      return run_adams(adams_seed, adams_count, adams_a, adams_resolution, adams_pad, adams_out,
                       report_format);
    }
    if (duality_cmd->parsed()) {
      return run_duality(dual_grid, dual_count, dual_pad, dual_out, report_format);
    }
    if (lorentz->parsed()) return run_lorentz(lor_resolution, lor_out, report_format);
    if (symbol->parsed()) return run_symbol_check(sym_path, sym_samples, sym_out, report_format);
  } catch (const doro::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
