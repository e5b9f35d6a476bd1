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

#include "pmlab/types.hpp"

namespace pmlab {

// Dense linear assignment. The cost matrix is square; cost(i, j) is the
// price of assigning X_i to observation Y_j. A solution is a Permutation p
// with p[j] = i, and its objective is sum_j cost(p[j], j) accumulated in
// increasing j.
//
// Tie-break: among all optimal permutations both solvers return the
// lexicographically smallest in one-line notation (p[0], p[1], ...).

/// Throws InputError if `cost` is not square or holds a non-finite entry.
void validate_cost_matrix(const Matrix& cost);

double assignment_cost(const Matrix& cost, const Permutation& p);

/// Shortest augmenting path with dense potentials, O(n^3), followed by a
/// lexicographic pass over the equality subgraph of the optimal duals.
Permutation solve_lap_min(const Matrix& cost);

/// Exhaustive search over S_n in lexicographic order; n <= 9 (SizeError otherwise).
Permutation solve_lap_brute(const Matrix& cost);

inline constexpr std::size_t kLapBruteMaxN = 9;

}  // namespace pmlab
