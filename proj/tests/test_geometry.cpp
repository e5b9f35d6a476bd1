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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pmlab/geometry.hpp"
#include "pmlab/matching.hpp"
#include "pmlab/rng.hpp"

using namespace pmlab;

namespace {

std::size_t recount_edges(const Matrix& pts, double r, NormKind norm) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < pts.rows(); ++i)
    for (std::size_t j = 0; j < pts.rows(); ++j) {
      if (i == j) continue;
      double acc = 0.0;
      for (std::size_t k = 0; k < pts.cols(); ++k) {
        const double diff = std::abs(pts(i, k) - pts(j, k));
        if (norm == NormKind::L1) acc += diff;
        else if (norm == NormKind::L2) acc += diff * diff;
        else acc = std::max(acc, diff);
      }
      if (norm == NormKind::L2) acc = std::sqrt(acc);
      count += acc < r;
    }
  return count / 2;
}

}  // namespace

TEST_CASE("collinear points") {
  const Matrix pts = Matrix::from_rows({{0.0}, {1.0}, {2.0}});
  const Graph g = build_rgg(pts, 1.5, NormKind::L2);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(build_rgg(pts, 1.0, NormKind::L2).edge_count() == 0);  // strict
  CHECK_THROWS_AS(build_rgg(pts, 0.0, NormKind::L2), ConfigError);
}

TEST_CASE("edge counts match a double loop under every norm") {
  const Matrix pts = sample_positions(PositionSpec::isotropic_gaussian(2), 50, 4);
  for (auto norm : {NormKind::L1, NormKind::L2, NormKind::Linf}) {
    CHECK(build_rgg(pts, 0.3, norm).edge_count() == recount_edges(pts, 0.3, norm));
    CHECK(build_rgg(pts, 0.3, norm, 4) == serial::build_rgg(pts, 0.3, norm));
  }
}

TEST_CASE("radius below the minimum distance gives no edges") {
  const Matrix pts = sample_positions(PositionSpec::uniform_cube(3, 1.0), 30, 2);
  double minDist = INFINITY;
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = i + 1; j < 30; ++j)
      minDist = std::min(minDist, norm_distance(pts.row(i), pts.row(j), NormKind::L2));
  CHECK(build_rgg(pts, minDist, NormKind::L2).edge_count() == 0);
}

TEST_CASE("edge sets grow with r") {
  const Matrix pts = sample_positions(PositionSpec::isotropic_gaussian(2), 60, 8);
  const Graph small = build_rgg(pts, 0.2, NormKind::L2), big = build_rgg(pts, 0.5, NormKind::L2);
  for (const auto& [a, b] : small.edges()) CHECK(big.has_edge(a, b));
}

TEST_CASE("expected edge count") {
  const auto pos = PositionSpec::isotropic_gaussian(2);
  const McEstimate huge = count_expected_edges(pos, 100, 1e6, NormKind::L2, 1 << 14, 1);
  CHECK(huge.value == 4950.0);
  CHECK(count_expected_edges(pos, 100, 0.0, NormKind::L2, 100, 1).value == 0.0);

  // ||X1 - X2||^2 ~ 2 chi^2_2, so P(< r) = 1 - exp(-r^2 / 4).
  const double want = 4950.0 * (1.0 - std::exp(-0.01 / 4.0));
  const McEstimate e = count_expected_edges(pos, 100, 0.1, NormKind::L2, 1 << 21, 7);
  CHECK(std::abs(e.value - want) <= 3.0 * e.stdError);
  CHECK(e.samples == (1u << 21));
}

TEST_CASE("expected edge count does not depend on threads") {
  const auto pos = PositionSpec::standard_laplace(3);
  const McEstimate a = count_expected_edges(pos, 40, 0.7, NormKind::L1, 100000, 5, 1);
  const McEstimate b = count_expected_edges(pos, 40, 0.7, NormKind::L1, 100000, 5, 4);
  const McEstimate c = serial::count_expected_edges(pos, 40, 0.7, NormKind::L1, 100000, 5);
  CHECK(a.value == b.value);
  CHECK(a.value == c.value);
  CHECK(a.stdError == c.stdError);
}

TEST_CASE("grid pair matching") {
  SUBCASE("two points share a cell") {
    const Matrix pts = Matrix::from_rows({{0.1, 0.1}, {0.2, 0.15}, {5.0, 5.0}, {-7.0, 3.0}});
    const Matching m = grid_pair_matching(pts, 1.0, NormKind::L2);
    CHECK(m.edges == std::vector<Edge>{{0, 1}});
  }
  SUBCASE("far apart points") {
    const Matrix pts = Matrix::from_rows({{0.0, 0.0}, {3.0, 0.0}, {0.0, 3.0}});
    CHECK(grid_pair_matching(pts, 1.0, NormKind::L2).size() == 0);
  }
  SUBCASE("boundary goes to the lower cell") {
    // Side 1 (Linf). 1.0 lies in (0, 1] together with 0.5; 1.5 is alone in (1, 2].
    const Matrix pts = Matrix::from_rows({{0.5}, {1.0}, {1.5}});
    CHECK(grid_pair_matching(pts, 1.0, NormKind::Linf).edges == std::vector<Edge>{{0, 1}});
  }
  SUBCASE("cell sides") {
    CHECK(grid_cell_side(1.0, 4, NormKind::L2) == 0.5);
    CHECK(grid_cell_side(1.0, 4, NormKind::L1) == 0.25);
    CHECK(grid_cell_side(1.0, 4, NormKind::Linf) == 1.0);
  }
}

TEST_CASE("grid matching is a valid sub-matching of the RGG") {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const std::size_t d = 1 + s % 3;
    const auto norm = static_cast<NormKind>(s % 3);
    const Matrix pts = sample_positions(PositionSpec::isotropic_gaussian(d), 12, s);
    const double r = 0.2 + 0.1 * static_cast<double>(s % 10);
    const Graph g = build_rgg(pts, r, norm, 1);
    const Matching m = grid_pair_matching(pts, r, norm);
    CHECK(is_matching_of(m, g));
    CHECK(m.size() <= max_matching(g).size());
  }
}

TEST_CASE("edge list round trip") {
  const Graph g(5, {{0, 3}, {1, 2}, {2, 4}});
  std::stringstream s;
  write_edge_list(s, g);
  CHECK(s.str() == "5 3\n0 3\n1 2\n2 4\n");
  CHECK(read_edge_list(s) == g);
  std::stringstream bad("3 1\n1 1\n");
  CHECK_THROWS_AS(read_edge_list(bad), InputError);
}

TEST_CASE("LD parameter validation") {
  LDParams p = LDParams::gaussian(2);
  CHECK(p.Rd == 2.0);
  CHECK_NOTHROW(p.validate());
  p.beta = 0.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = LDParams::gaussian(2);
  p.gamma = 1.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}
