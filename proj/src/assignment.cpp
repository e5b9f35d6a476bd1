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

#include "pmlab/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pmlab {

void validate_cost_matrix(const Matrix& cost) {
  if (cost.rows() != cost.cols()) throw InputError("cost matrix must be square");
  for (double v : cost.data()) {
    if (std::isnan(v)) throw InputError("cost matrix contains NaN");
    if (!std::isfinite(v)) throw InputError("cost matrix contains an infinite entry");
  }
}

double assignment_cost(const Matrix& cost, const Permutation& p) {
  if (p.size() != cost.cols()) throw InputError("assignment_cost: size mismatch");
  double total = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) total += cost(p[j], j);
  return total;
}

namespace {

struct DualSolution {
  std::vector<std::size_t> xOfY;  // xOfY[j] = i
  std::vector<double> uY;         // potential of observation j
  std::vector<double> vX;         // potential of position i
};

// Shortest augmenting path (Hungarian / Jonker-Volgenant family). Rows of
// the working matrix are observations j, columns are positions i, so
// a(j, i) = cost(i, j). Reduced cost a(j, i) - uY[j] - vX[i] >= 0 at exit,
// and zero on the returned assignment.
DualSolution shortest_augmenting_path(const Matrix& cost) {
  const std::size_t n = cost.rows();
  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based with slot 0 as the virtual source column.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (std::size_t row = 1; row <= n; ++row) {
    p[0] = row;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t col = 1; col <= n; ++col) {
        if (used[col]) continue;
        const double cur = cost(col - 1, i0 - 1) - u[i0] - v[col];
        if (cur < minv[col]) {
          minv[col] = cur;
          way[col] = j0;
        }
        if (minv[col] < delta) {
          delta = minv[col];
          j1 = col;
        }
      }
      for (std::size_t col = 0; col <= n; ++col) {
        if (used[col]) {
          u[p[col]] += delta;
          v[col] -= delta;
        } else {
          minv[col] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  DualSolution out;
  out.xOfY.resize(n);
  out.uY.assign(u.begin() + 1, u.end());
  out.vX.assign(v.begin() + 1, v.end());
  for (std::size_t col = 1; col <= n; ++col) out.xOfY[p[col] - 1] = col - 1;
  return out;
}

// Rewrites `dual.xOfY` into the lexicographically smallest perfect matching
// of the equality subgraph {(i, j) : reduced cost <= tol}. Every such
// matching is optimal by complementary slackness.
void lex_min_on_equality_graph(const Matrix& cost, DualSolution& dual, double tol) {
  const std::size_t n = cost.rows();
  std::vector<std::size_t>& xOfY = dual.xOfY;
  std::vector<std::size_t> yOfX(n);
  for (std::size_t j = 0; j < n; ++j) yOfX[xOfY[j]] = j;

  auto tight = [&](std::size_t i, std::size_t j) {
    return cost(i, j) - dual.uY[j] - dual.vX[i] <= tol;
  };

  std::vector<char> fixedX(n, 0);
  std::vector<char> visited(n);
  std::size_t target = 0;

  // Finds a new tight partner for observation y among unfixed positions,
  // displacing partners recursively, until `target` is taken.
  auto reroute = [&](auto&& self, std::size_t y) -> bool {
    for (std::size_t i = 0; i < n; ++i) {
      if (visited[i] || fixedX[i] || !tight(i, y)) continue;
      visited[i] = 1;
      const std::size_t displaced = yOfX[i];
      if (i == target || self(self, displaced)) {
        xOfY[y] = i;
        yOfX[i] = y;
        return true;
      }
    }
    return false;
  };

  for (std::size_t j = 0; j < n; ++j) {
    target = xOfY[j];
    for (std::size_t cand = 0; cand < target; ++cand) {
      if (fixedX[cand] || !tight(cand, j)) continue;
      // Force (cand, j): cand's old observation must move along tight edges
      // of the unfixed part and end on `target`, which j releases.
      std::fill(visited.begin(), visited.end(), 0);
      visited[cand] = 1;
      if (!reroute(reroute, yOfX[cand])) continue;
      xOfY[j] = cand;
      yOfX[cand] = j;
      break;
    }
    fixedX[xOfY[j]] = 1;
  }
}

}  // namespace

Permutation solve_lap_min(const Matrix& cost) {
  validate_cost_matrix(cost);
  const std::size_t n = cost.rows();
  if (n == 0) return Permutation{};

  DualSolution dual = shortest_augmenting_path(cost);
  const Permutation raw(dual.xOfY);

  double scale = 1.0;
  for (double c : cost.data()) scale = std::max(scale, std::abs(c));
  const double tol = 64.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;
  lex_min_on_equality_graph(cost, dual, tol);
  Permutation lex(std::move(dual.xOfY));
  // The tolerance can only admit float-level near-ties; never trade away
  // objective for lexicographic order.
  if (assignment_cost(cost, lex) > assignment_cost(cost, raw)) return raw;
  return lex;
}

Permutation solve_lap_brute(const Matrix& cost) {
  validate_cost_matrix(cost);
  const std::size_t n = cost.rows();
  if (n > kLapBruteMaxN) throw SizeError("solve_lap_brute: n exceeds 9");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> best = perm;
  double bestCost = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) total += cost(perm[j], j);
    if (total < bestCost) {
      bestCost = total;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Permutation(std::move(best));
}

}  // namespace pmlab
