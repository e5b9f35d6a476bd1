// Copyright 2026 The pmlab Authors
//
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

#include "pmlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace pmlab {

void LDParams::validate() const {
  if (!(Rd > 0.0)) throw ConfigError("LDParams: Rd must be positive");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("LDParams: gamma must lie in (0, 1]");
  if (!(beta >= std::log(2.0))) throw ConfigError("LDParams: beta must be >= log 2");
  if (!(KQ > 0.0)) throw ConfigError("LDParams: KQ must be positive");
  if (!(fPsup > 0.0)) throw ConfigError("LDParams: fPsup must be positive");
}

LDParams LDParams::gaussian(std::size_t d) {
  LDParams p;
  p.Rd = std::sqrt(2.0 * static_cast<double>(d));
  p.norm = NormKind::L2;
  p.gamma = 0.5;
  p.beta = 1.0;
  p.KQ = 1.0;
  p.fPsup = std::pow(2.0 * std::numbers::pi, -0.5 * static_cast<double>(d));
  return p;
}

namespace {

void check_radius(double r) {
  if (!(r > 0.0)) throw ConfigError("radius r must be positive");
}

void rgg_row(const Matrix& points, std::size_t i, double r, NormKind norm,
             std::vector<Edge>& out) {
  const auto xi = points.row(i);
  for (std::size_t j = i + 1; j < points.rows(); ++j)
    if (norm_distance(xi, points.row(j), norm) < r) out.emplace_back(i, j);
}

// Draws pairs (X_1, X_2) and records the indicator norm(X_1 - X_2) < r.
struct EdgeKernel {
  const PositionSpec& position;
  double r;
  NormKind norm;

  void operator()(Rng& rng, std::uint64_t count, Moments& m) const {
    std::vector<double> a(position.dimension), b(position.dimension);
    for (std::uint64_t s = 0; s < count; ++s) {
      draw_position(position, rng, a);
      draw_position(position, rng, b);
      m.add(norm_distance(a, b, norm) < r ? 1.0 : 0.0);
    }
  }
};

McEstimate scale_pairs(const Moments& m, std::size_t n) {
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  McEstimate est = m.estimate();
  // Bernoulli standard error from the hit fraction.
  const double p = est.value;
  est.stdError = m.count ? std::sqrt(p * (1.0 - p) / static_cast<double>(m.count)) : 0.0;
  est.value *= pairs;
  est.stdError *= pairs;
  return est;
}

}  // namespace

Graph build_rgg(const Matrix& points, double r, NormKind norm, int threads) {
  check_radius(r);
  const std::size_t n = points.rows();
  std::vector<std::vector<Edge>> rows(n);
#pragma omp parallel for schedule(dynamic, 16) num_threads(resolve_threads(threads))
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
    rgg_row(points, static_cast<std::size_t>(i), r, norm, rows[static_cast<std::size_t>(i)]);
  std::vector<Edge> edges;
  for (auto& row : rows) edges.insert(edges.end(), row.begin(), row.end());
  return Graph(n, std::move(edges));
}

Graph serial::build_rgg(const Matrix& points, double r, NormKind norm) {
  check_radius(r);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < points.rows(); ++i) rgg_row(points, i, r, norm, edges);
  return Graph(points.rows(), std::move(edges));
}

McEstimate count_expected_edges(const PositionSpec& position, std::size_t n, double r,
                                NormKind norm, std::uint64_t mcSamples, std::uint64_t seed,
                                int threads) {
  position.validate();
  if (mcSamples == 0) throw ConfigError("count_expected_edges: mcSamples must be >= 1");
  if (n < 2 || r <= 0.0) return {0.0, 0.0, mcSamples, false};
  return scale_pairs(block_moments(mcSamples, seed, threads, EdgeKernel{position, r, norm}), n);
}

McEstimate serial::count_expected_edges(const PositionSpec& position, std::size_t n, double r,
                                        NormKind norm, std::uint64_t mcSamples,
                                        std::uint64_t seed) {
  position.validate();
  if (mcSamples == 0) throw ConfigError("count_expected_edges: mcSamples must be >= 1");
  if (n < 2 || r <= 0.0) return {0.0, 0.0, mcSamples, false};
  return scale_pairs(serial::block_moments(mcSamples, seed, EdgeKernel{position, r, norm}), n);
}

double grid_cell_side(double r, std::size_t d, NormKind norm) {
  switch (norm) {
    case NormKind::L2: return r / std::sqrt(static_cast<double>(d));
    case NormKind::L1: return r / static_cast<double>(d);
    case NormKind::Linf: return r;
  }
  return r;
}

Matching grid_pair_matching(const Matrix& points, double r, NormKind norm) {
  check_radius(r);
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  const double side = grid_cell_side(r, d, norm);

  // Cell (k_1, ..., k_d) covers (k*s, (k+1)*s] on each axis, so a point on a
  // boundary belongs to the lower-index cell.
  std::vector<std::vector<std::int64_t>> keys(n, std::vector<std::int64_t>(d));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k)
      keys[i][k] = static_cast<std::int64_t>(std::ceil(points(i, k) / side)) - 1;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

  Matching m;
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo + 1;
    while (hi < n && keys[order[hi]] == keys[order[lo]]) ++hi;
    if (hi - lo == 2) {
      const std::size_t a = order[lo], b = order[lo + 1];
      // Rounding in ceil(x / s) can misplace a point by one ulp; keep only
      // pairs that are genuinely closer than r.
      if (norm_distance(points.row(a), points.row(b), norm) < r) m.edges.push_back(make_edge(a, b));
    }
    lo = hi;
  }
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

}  // namespace pmlab
