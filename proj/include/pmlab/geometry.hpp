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

#pragma once

#include <cstdint>

#include "pmlab/graph.hpp"
#include "pmlab/model.hpp"
#include "pmlab/parallel.hpp"

namespace pmlab {

/// Parameters of the low-dimensional position assumptions: a ball of radius
/// Rd (in `norm`) carrying mass >= gamma, density ratio bound e^{beta d}
/// with beta >= log 2, sub-Gaussian bound KQ of the noise and sup of f_P.
struct LDParams {
  double Rd = 1.0;
  NormKind norm = NormKind::L2;
  double gamma = 1.0;
  double beta = 1.0;
  double KQ = 1.0;
  double fPsup = 1.0;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
  /// The instantiation for standard Gaussian positions in dimension d:
  /// Rd = sqrt(2d), gamma = 1/2, beta = 1, L2 norm.
  static LDParams gaussian(std::size_t d);
};

/// Random geometric graph: {i, j} is an edge iff norm(x_i - x_j) < r.
/// `threads` <= 0 uses the OpenMP default.
Graph build_rgg(const Matrix& points, double r, NormKind norm, int threads = 0);

/// Monte Carlo estimate of C(n, 2) * P(norm(X_1 - X_2) < r).
McEstimate count_expected_edges(const PositionSpec& position, std::size_t n, double r,
                                NormKind norm, std::uint64_t mcSamples, std::uint64_t seed,
                                int threads = 0);

/// Side of a grid cell whose norm-diameter is r: r/sqrt(d) (L2), r/d (L1), r (Linf).
double grid_cell_side(double r, std::size_t d, NormKind norm);

/// Tiles space with half-open cells (k*s, (k+1)*s] per axis, s from
/// grid_cell_side, and returns one pair per cell holding exactly two
/// points. Every pair is an edge of build_rgg(points, r, norm).
Matching grid_pair_matching(const Matrix& points, double r, NormKind norm);

namespace serial {
Graph build_rgg(const Matrix& points, double r, NormKind norm);
McEstimate count_expected_edges(const PositionSpec& position, std::size_t n, double r,
                                NormKind norm, std::uint64_t mcSamples, std::uint64_t seed);
}  // namespace serial

}  // namespace pmlab
