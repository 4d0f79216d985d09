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

#include "doro/capacity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>

#include "doro/error.hpp"

namespace doro::capacity {

double BallCover::recompute_cost() const {
  double c = 0.0;
  for (const Ball& b : balls) c += std::pow(b.radius, alpha);
  return c;
}

BinaryMask superlevel_set(const ScalarField& f, double t) {
  f.validate();
  BinaryMask mask(f.grid);
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    mask.bits[i] = f.samples[i] > t ? 1 : 0;
  }
  return mask;
}

namespace {

std::vector<double> dyadic_radii(const GridSpec& g, double max_radius) {
  std::vector<double> radii;
  for (double r = g.h; r <= max_radius * (1.0 + 1e-12); r *= 2.0) radii.push_back(r);
  return radii;
}

// Integer-offset ball stencil: nodes within index distance r/h of the
// center. Rows are stored as contiguous half-width spans so the d = 2 sweep
// walks consecutive flat indices.
struct Stencil {
  int reach;
  double r2;  // squared index reach with a tie tolerance for closed balls
  std::vector<int> half_width;  // per d0 in [-reach, reach]

  int width_at(int d0) const { return half_width[static_cast<std::size_t>(d0 + reach)]; }
};

Stencil make_stencil(double r, double h) {
  Stencil s;
  const double ratio = r / h;
  s.reach = static_cast<int>(std::floor(ratio + 1e-12));
  s.r2 = ratio * ratio * (1.0 + 1e-12);
  s.half_width.resize(static_cast<std::size_t>(2 * s.reach + 1));
  for (int d0 = -s.reach; d0 <= s.reach; ++d0) {
    s.half_width[static_cast<std::size_t>(d0 + s.reach)] =
        static_cast<int>(std::floor(std::sqrt(std::max(0.0, s.r2 - double(d0) * d0))));
  }
  return s;
}

// Visits flat node indices in the closed ball; d = 2 rows are visited as
// contiguous [begin, end) spans for speed.
template <typename VisitSpan>
void for_ball_spans(const GridSpec& g, const Index3& center, const Stencil& s,
                    VisitSpan&& visit_span) {
  for (int d0 = -s.reach; d0 <= s.reach; ++d0) {
    const int i0 = center[0] + d0;
    if (i0 < 0 || i0 >= g.dims[0]) continue;
    const int w = s.width_at(d0);
    if (g.d == 2) {
      const int j_lo = std::max(0, center[1] - w);
      const int j_hi = std::min(g.dims[1] - 1, center[1] + w);
      if (j_lo > j_hi) continue;
      const std::size_t base = std::size_t(i0) * g.dims[1];
      visit_span(base + j_lo, base + j_hi + 1);
    } else {
      for (int d1 = -w; d1 <= w; ++d1) {
        const int i1 = center[1] + d1;
        if (i1 < 0 || i1 >= g.dims[1]) continue;
        const int w2 = static_cast<int>(
            std::floor(std::sqrt(std::max(0.0, s.r2 - double(d0) * d0 - double(d1) * d1))));
        const int k_lo = std::max(0, center[2] - w2);
        const int k_hi = std::min(g.dims[2] - 1, center[2] + w2);
        if (k_lo > k_hi) continue;
        const std::size_t base = (std::size_t(i0) * g.dims[1] + i1) * g.dims[2];
        visit_span(base + k_lo, base + k_hi + 1);
      }
    }
  }
}

template <typename Visit>
void for_ball(const GridSpec& g, const Index3& center, const Stencil& s, Visit&& visit) {
  for_ball_spans(g, center, s, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) visit(i);
  });
}

struct Candidate {
  std::size_t node;
  int radius_idx;
  std::size_t gain;   // uncovered true nodes inside the ball when last scored
  double score;       // r^alpha / gain, smaller is better
  std::uint64_t stamp;
};

struct CandidateOrder {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.score != b.score) return a.score > b.score;  // min-heap
    if (a.radius_idx != b.radius_idx) return a.radius_idx > b.radius_idx;
    return a.node > b.node;
  }
};

}  // namespace

BallCover hausdorff_content(const BinaryMask& mask, double alpha, const BallFilter& admissible) {
  mask.validate();
  if (!(alpha >= 0.0 && alpha <= double(mask.grid.d))) {
    throw DomainError("content exponent alpha must lie in [0, d]");
  }
  const GridSpec& g = mask.grid;
  BallCover cover;
  cover.alpha = alpha;
  const std::size_t target = mask.count_true();
  if (target == 0) return cover;

  const std::vector<double> radii = dyadic_radii(g, g.min_extent() / 2.0);
  std::vector<Stencil> stencils;
  for (double r : radii) stencils.push_back(make_stencil(r, g.h));

  std::vector<std::size_t> true_nodes;
  for (std::size_t i = 0; i < mask.bits.size(); ++i) {
    if (mask.bits[i]) true_nodes.push_back(i);
  }

  // Uncovered true nodes as one array so gain counting sums contiguous
  // spans.
  std::vector<std::uint8_t> covered(mask.bits.size(), 0);
  std::vector<std::uint8_t> uncovered_true(mask.bits.size());
  for (std::size_t i = 0; i < mask.bits.size(); ++i) uncovered_true[i] = mask.bits[i];
  auto count_uncovered = [&](std::size_t node, int ri) {
    std::size_t gain = 0;
    for_ball_spans(g, g.unindex(node), stencils[ri], [&](std::size_t begin, std::size_t end) {
      const std::uint8_t* p = uncovered_true.data();
      for (std::size_t i = begin; i < end; ++i) gain += p[i];
    });
    return gain;
  };

  // Lazy greedy: gains only shrink as coverage grows, so a candidate whose
  // cached score is current (stamped after the last accept) is optimal when
  // popped. The cheapest all-covering single ball is tracked on the side:
  // the myopic sweep can tie-break itself into a patchwork costing more
  // than one ball that covers everything.
  std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> heap;
  std::uint64_t round = 0;
  double best_single_cost = std::numeric_limits<double>::infinity();
  Candidate best_single{0, -1, 0, 0.0, 0};
  for (std::size_t node : true_nodes) {
    const Point3 c = g.coords(g.unindex(node));
    for (int ri = 0; ri < static_cast<int>(radii.size()); ++ri) {
      if (admissible && !admissible(c, radii[ri])) continue;
      const std::size_t gain = count_uncovered(node, ri);
      if (gain == 0) continue;
      if (gain == target && std::pow(radii[ri], alpha) < best_single_cost) {
        best_single_cost = std::pow(radii[ri], alpha);
        best_single = {node, ri, gain, 0.0, 0};
      }
      heap.push({node, ri, gain, std::pow(radii[ri], alpha) / double(gain), round});
    }
  }

  std::size_t covered_count = 0;
  while (covered_count < target && !heap.empty()) {
    Candidate top = heap.top();
    heap.pop();
    if (top.stamp != round) {
      const std::size_t gain = count_uncovered(top.node, top.radius_idx);
      if (gain == 0) continue;
      top.gain = gain;
      top.score = std::pow(radii[top.radius_idx], alpha) / double(gain);
      top.stamp = round;
      heap.push(top);
      continue;
    }
    // Accept.
    for_ball(g, g.unindex(top.node), stencils[top.radius_idx], [&](std::size_t idx) {
      if (mask.bits[idx] && !covered[idx]) {
        covered[idx] = 1;
        uncovered_true[idx] = 0;
        ++covered_count;
      }
    });
    cover.balls.push_back({g.coords(g.unindex(top.node)), radii[top.radius_idx]});
    cover.cost += std::pow(radii[top.radius_idx], alpha);
    ++round;
  }

  if (covered_count < target) {
    throw ValidationError("cover ball irreparably outside domain: " +
                          std::to_string(target - covered_count) +
                          " mask nodes admit no admissible candidate ball");
  }
  if (best_single.radius_idx >= 0 && best_single_cost < cover.cost) {
    cover.balls = {{g.coords(g.unindex(best_single.node)), radii[best_single.radius_idx]}};
    cover.cost = best_single_cost;
  }
  return cover;
}

double hausdorff_content_exact(const BinaryMask& mask, double alpha, int max_balls) {
  mask.validate();
  const GridSpec& g = mask.grid;
  if (max_balls < 1 || max_balls > 3) throw ValidationError("max_balls must be in [1, 3]");
  for (int a = 0; a < g.d; ++a) {
    if (g.dims[a] > 32) throw SizeError("exact content oracle is limited to 32^d grids");
  }
  if (!(alpha >= 0.0 && alpha <= double(g.d))) {
    throw DomainError("content exponent alpha must lie in [0, d]");
  }

  std::vector<std::size_t> true_nodes;
  for (std::size_t i = 0; i < mask.bits.size(); ++i) {
    if (mask.bits[i]) true_nodes.push_back(i);
  }
  if (true_nodes.empty()) return 0.0;
  const std::size_t n_true = true_nodes.size();
  std::vector<int> true_rank(mask.bits.size(), -1);
  for (std::size_t t = 0; t < n_true; ++t) true_rank[true_nodes[t]] = static_cast<int>(t);

  // Candidate balls centered on every node; keep only those covering at
  // least one true node, with their coverage as a bitset over true nodes.
  const std::vector<double> radii = dyadic_radii(g, g.min_extent() / 2.0);
  const std::size_t words = (n_true + 63) / 64;
  struct ExactCand {
    double cost;
    std::vector<std::uint64_t> bits;
    std::size_t covered;
  };
  std::vector<ExactCand> cands;
  for (std::size_t node = 0; node < mask.bits.size(); ++node) {
    for (double r : radii) {
      ExactCand c;
      c.cost = std::pow(r, alpha);
      c.bits.assign(words, 0);
      c.covered = 0;
      for_ball(g, g.unindex(node), make_stencil(r, g.h), [&](std::size_t idx) {
        const int t = true_rank[idx];
        if (t >= 0) {
          c.bits[t / 64] |= std::uint64_t(1) << (t % 64);
          ++c.covered;
        }
      });
      if (c.covered > 0) cands.push_back(std::move(c));
    }
  }
  std::sort(cands.begin(), cands.end(),
            [](const ExactCand& a, const ExactCand& b) { return a.cost < b.cost; });

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> acc(words, 0);

  // Depth-first branch and bound: always branch on candidates covering the
  // first uncovered true node; candidates are cost-sorted so pruning on the
  // running cost is effective.
  auto first_uncovered = [&](const std::vector<std::uint64_t>& bits) -> int {
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t free_bits = ~bits[w];
      if (w == words - 1 && n_true % 64 != 0) {
        free_bits &= (std::uint64_t(1) << (n_true % 64)) - 1;
      }
      if (free_bits != 0) return static_cast<int>(w * 64 + std::countr_zero(free_bits));
    }
    return -1;
  };

  std::function<void(std::vector<std::uint64_t>&, double, int)> search =
      [&](std::vector<std::uint64_t>& bits, double cost, int balls_left) {
        const int need = first_uncovered(bits);
        if (need < 0) {
          best = std::min(best, cost);
          return;
        }
        if (balls_left == 0) return;
        const std::uint64_t need_mask = std::uint64_t(1) << (need % 64);
        const std::size_t need_word = static_cast<std::size_t>(need) / 64;
        for (const ExactCand& c : cands) {
          if (cost + c.cost >= best) break;  // cost-sorted
          if ((c.bits[need_word] & need_mask) == 0) continue;
          std::vector<std::uint64_t> merged(words);
          for (std::size_t w = 0; w < words; ++w) merged[w] = bits[w] | c.bits[w];
          search(merged, cost + c.cost, balls_left - 1);
        }
      };
  search(acc, 0.0, max_balls);
  return best;
}

Report coarea_tv(const ScalarField& f, int n_levels) {
  f.validate();
  if (n_levels < 8) throw ValidationError("coarea needs at least 8 levels");

  // Total variation of the sampled gradient, Euclidean channel magnitude;
  // central in the interior, one-sided on the frame.
  double tv_gradient = 0.0;
  {
    const GridSpec& g = f.grid;
    const double cell = std::pow(g.h, g.d);
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
      const Index3 iv = g.unindex(i);
      double sq = 0.0;
      for (int a = 0; a < g.d; ++a) {
        Index3 up = iv, dn = iv;
        up[a] = std::min(iv[a] + 1, g.dims[a] - 1);
        dn[a] = std::max(iv[a] - 1, 0);
        const double der =
            (f.samples[g.index(up)] - f.samples[g.index(dn)]) / ((up[a] - dn[a]) * g.h);
        sq += der * der;
      }
      tv_gradient += std::sqrt(sq);
    }
    tv_gradient *= cell;
  }

  const auto [lo_it, hi_it] = std::minmax_element(f.samples.begin(), f.samples.end());
  const double lo = *lo_it, hi = *hi_it;

  Report report;
  report.set("tv_gradient", tv_gradient);
  if (hi == lo) {
    report.set("tv_coarea", 0.0);
    report.set("ratio_defined", false);
    return report;
  }

  const double dt = (hi - lo) / n_levels;
  double tv_coarea = 0.0;
  for (int k = 0; k < n_levels; ++k) {
    tv_coarea += boundary_measure(f, lo + (k + 0.5) * dt) * dt;
  }
  report.set("tv_coarea", tv_coarea);
  report.set_ratio("ratio", tv_coarea, tv_gradient);
  return report;
}

Report boxing_check(const ScalarField& f, double t) {
  const BinaryMask mask = superlevel_set(f, t);
  Report report;
  const std::size_t n_true = mask.count_true();
  if (n_true == 0) {
    report.set("content", 0.0);
    report.set("boundary", 0.0);
    report.set("cover_balls", 0.0);
    report.set("ratio_defined", false);
    return report;
  }
  const BallCover cover = hausdorff_content(mask, double(mask.grid.d - 1));
  const double boundary = boundary_measure(f, t);
  report.set("content", cover.cost);
  report.set("boundary", boundary);
  report.set("cover_balls", double(cover.balls.size()));
  report.set_ratio("ratio", cover.cost, boundary);
  return report;
}

Report boxing_check(const BinaryMask& mask) {
  Report report;
  const std::size_t n_true = mask.count_true();
  if (n_true == 0) {
    report.set("content", 0.0);
    report.set("cover_balls", 0.0);
    report.set("ratio_defined", false);
    return report;
  }
  const BallCover cover = hausdorff_content(mask, double(mask.grid.d - 1));
  report.set("content", cover.cost);
  report.set("cover_balls", double(cover.balls.size()));
  report.set("ratio_defined", false);
  return report;
}

}  // namespace doro::capacity
