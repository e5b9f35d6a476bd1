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

#include "oracles.hpp"
#include "pmlab/matching.hpp"
#include "pmlab/rng.hpp"
#include "pmlab/verify.hpp"

using namespace pmlab;

namespace {

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

int oracle_size(const Graph& g) { return oracle::SubsetMatching(g.vertex_count(), g.edges()).size(); }

// Searches for an augmenting path by trying every alternating walk from
// each free vertex (small graphs only).
bool has_augmenting_path(const Graph& g, const Matching& m) {
  const std::size_t n = g.vertex_count();
  std::vector<long> mate(n, -1);
  for (auto [a, b] : m.edges) {
    mate[a] = static_cast<long>(b);
    mate[b] = static_cast<long>(a);
  }
  const auto adj = g.adjacency();
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> extend = [&](std::size_t v) -> bool {
    // v is reached by an unmatched edge (or is the start); try a free neighbor
    // or continue through a matched one.
    for (std::size_t u : adj[v]) {
      if (used[u]) continue;
      if (mate[u] < 0) return true;
      const auto w = static_cast<std::size_t>(mate[u]);
      if (used[w]) continue;
      used[u] = used[w] = 1;
      if (extend(w)) return true;
      used[u] = used[w] = 0;
    }
    return false;
  };
  for (std::size_t s = 0; s < n; ++s) {
    if (mate[s] >= 0) continue;
    std::fill(used.begin(), used.end(), 0);
    used[s] = 1;
    if (extend(s)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("small named graphs") {
  CHECK(max_matching(complete(3)).size() == 1);
  CHECK(max_matching(Graph(4, {{0, 1}, {1, 2}, {2, 3}})).size() == 2);
  CHECK(max_matching_brute(complete(4)).size() == 2);
  CHECK(max_matching_brute(Graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}})).size() == 1);
  CHECK(max_matching(Graph(0)).size() == 0);
  CHECK(greedy_matching(Graph(5)).size() == 0);
  CHECK(greedy_matching(Graph(6, {{0, 1}, {2, 3}, {4, 5}})).size() == 3);
  CHECK_THROWS_AS(max_matching_brute(Graph(15)), SizeError);
}

TEST_CASE("blossom examples") {
  // Two triangles joined by a path: needs blossom contraction.
  const Graph g(8, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 7}});
  CHECK(max_matching(g).size() == 4);
  // Petersen graph has a perfect matching.
  const Graph petersen(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                            {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}});
  CHECK(max_matching(petersen).size() == 5);
}

TEST_CASE("maximum matching agrees with subset enumeration") {
  for (std::uint64_t k = 0; k < 600; ++k) {
    const std::size_t v = 1 + k % 12;
    const double p = k < 300 ? 0.3 : 0.1 + 0.1 * static_cast<double>(k % 8);
    const Graph g = random_graph(v, p, derive_seed(31, k));
    const Matching m = max_matching(g);
    const int want = oracle_size(g);
    CHECK(is_matching_of(m, g));
    CHECK(static_cast<int>(m.size()) == want);
    CHECK(static_cast<int>(max_matching_brute(g).size()) == want);
    CHECK_FALSE(has_augmenting_path(g, m));
  }
}

TEST_CASE("greedy is maximal and within a factor of two") {
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const Graph g = random_graph(3 + k % 30, 0.15, derive_seed(41, k));
    const Matching gm = greedy_matching(g), mm = max_matching(g);
    CHECK(is_matching_of(gm, g));
    CHECK(2 * gm.size() >= mm.size());
    CHECK(mm.size() <= g.vertex_count() / 2);
    CHECK(mm.size() <= g.edge_count());
  }
}

TEST_CASE("matchings are deterministic") {
  const Graph g = random_graph(200, 0.03, 5);
  CHECK(max_matching(g) == max_matching(g));
}

TEST_CASE("is_matching rejects shared vertices") {
  CHECK_FALSE(is_matching(Matching{{{0, 1}, {1, 2}}}, 3));
  CHECK(is_matching(Matching{{{0, 1}, {2, 3}}}, 4));
  CHECK_FALSE(is_matching_of(Matching{{{0, 2}}}, Graph(3, {{0, 1}})));
}
