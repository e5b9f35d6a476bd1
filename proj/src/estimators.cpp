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

#include "pmlab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <tuple>

#include "pmlab/assignment.hpp"
#include "pmlab/parallel.hpp"

namespace pmlab {

std::string EstimatorKind::label() const {
  switch (type) {
    case Type::LSS: return "lss";
    case Type::LSSC: return "lssc";
    case Type::GreedyDistance: return "greedy-distance";
    case Type::GreedyInnerProduct: return "greedy-inner";
  }
  return "?";
}

void EstimatorKind::validate(std::size_t d) const {
  if (type != Type::LSSC) return;
  if (sigmaZ.size() != d) throw ConfigError("LSS-C: Sigma_Z must have d diagonal entries");
  for (double v : sigmaZ)
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError("LSS-C: Sigma_Z entries must be strictly positive");
}

EstimatorKind parse_estimator(std::string_view name, std::vector<double> sigmaZ) {
  if (name == "lss") return EstimatorKind::lss();
  if (name == "lssc") return EstimatorKind::lssc(std::move(sigmaZ));
  if (name == "greedy-distance") return EstimatorKind::greedy_distance();
  if (name == "greedy-inner") return EstimatorKind::greedy_inner_product();
  throw ConfigError("unknown estimator '" + std::string(name) +
                    "' (expected lss, lssc, greedy-distance or greedy-inner)");
}

namespace {

void cost_row(const Instance& inst, const EstimatorKind& kind, const std::vector<double>& weight,
              std::size_t i, Matrix& c) {
  const auto x = inst.X.row(i);
  for (std::size_t j = 0; j < inst.n; ++j) {
    const auto y = inst.Y.row(j);
    double acc = 0.0;
    switch (kind.type) {
      case EstimatorKind::Type::LSS:
      case EstimatorKind::Type::GreedyDistance:
        for (std::size_t k = 0; k < inst.d; ++k) acc += (x[k] - y[k]) * (x[k] - y[k]);
        break;
      case EstimatorKind::Type::LSSC:
        for (std::size_t k = 0; k < inst.d; ++k) acc += (x[k] - y[k]) * (x[k] - y[k]) * weight[k];
        break;
      case EstimatorKind::Type::GreedyInnerProduct:
        for (std::size_t k = 0; k < inst.d; ++k) acc -= x[k] * y[k];
        break;
    }
    c(i, j) = acc;
  }
}

std::vector<double> inverse_weights(const Instance& inst, const EstimatorKind& kind) {
  kind.validate(inst.d);
  std::vector<double> w;
  if (kind.type == EstimatorKind::Type::LSSC) {
    w.resize(inst.d);
    for (std::size_t k = 0; k < inst.d; ++k) w[k] = 1.0 / kind.sigmaZ[k];
  }
  return w;
}

// Sorts all n^2 pairs by (score, i, j) ascending and keeps pairs whose
// endpoints are both unmatched.
Permutation greedy(const Matrix& score) {
  const std::size_t n = score.rows();
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(score(i, j), i, j);
  std::sort(pairs.begin(), pairs.end());
  std::vector<char> usedX(n, 0), usedY(n, 0);
  std::vector<std::size_t> map(n);
  std::size_t matched = 0;
  for (const auto& [s, i, j] : pairs) {
    if (usedX[i] || usedY[j]) continue;
    usedX[i] = usedY[j] = 1;
    map[j] = i;
    if (++matched == n) break;
  }
  return Permutation(std::move(map));
}

}  // namespace

Matrix cost_matrix(const Instance& instance, const EstimatorKind& kind, int threads) {
  const auto w = inverse_weights(instance, kind);
  Matrix c(instance.n, instance.n);
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(instance.n); ++i)
    cost_row(instance, kind, w, static_cast<std::size_t>(i), c);
  return c;
}

Matrix serial::cost_matrix(const Instance& instance, const EstimatorKind& kind) {
  const auto w = inverse_weights(instance, kind);
  Matrix c(instance.n, instance.n);
  for (std::size_t i = 0; i < instance.n; ++i) cost_row(instance, kind, w, i, c);
  return c;
}

Permutation estimate(const Instance& instance, const EstimatorKind& kind, int threads) {
  const Matrix c = cost_matrix(instance, kind, threads);
  switch (kind.type) {
    case EstimatorKind::Type::LSS:
    case EstimatorKind::Type::LSSC: return solve_lap_min(c);
    case EstimatorKind::Type::GreedyDistance:
    case EstimatorKind::Type::GreedyInnerProduct: return greedy(c);
  }
  return Permutation::identity(instance.n);
}

std::size_t hamming(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw InputError("hamming: permutations differ in length");
  std::size_t count = 0;
  for (std::size_t j = 0; j < a.size(); ++j) count += a[j] != b[j];
  return count;
}

double lss_objective(const Instance& instance, const Permutation& p) {
  double total = 0.0;
  for (std::size_t j = 0; j < instance.n; ++j) {
    const auto x = instance.X.row(p[j]);
    const auto y = instance.Y.row(j);
    for (std::size_t k = 0; k < instance.d; ++k) total += (x[k] - y[k]) * (x[k] - y[k]);
  }
  return total;
}

}  // namespace pmlab
