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

#include "pmlab/matching.hpp"

#include <algorithm>
#include <limits>

#include "pmlab/types.hpp"

namespace pmlab {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

Matching collect(const std::vector<std::size_t>& mate) {
  Matching m;
  for (std::size_t v = 0; v < mate.size(); ++v)
    if (mate[v] != kNone && v < mate[v]) m.edges.emplace_back(v, mate[v]);
  return m;
}

class Blossom {
 public:
  explicit Blossom(const Graph& g)
      : n_(g.vertex_count()),
        adj_(g.adjacency()),
        mate_(n_, kNone),
        parent_(n_),
        base_(n_),
        inTree_(n_),
        inBlossom_(n_),
        onPath_(n_) {
    for (const auto& [a, b] : g.edges()) {
      if (mate_[a] == kNone && mate_[b] == kNone) {
        mate_[a] = b;
        mate_[b] = a;
      }
    }
  }

  Matching solve() {
    for (std::size_t root = 0; root < n_; ++root) {
      if (mate_[root] != kNone) continue;
      std::size_t v = find_augmenting_path(root);
      while (v != kNone) {
        const std::size_t pv = parent_[v];
        const std::size_t ppv = mate_[pv];
        mate_[v] = pv;
        mate_[pv] = v;
        v = ppv;
      }
    }
    return collect(mate_);
  }

 private:
  std::size_t lowest_common_ancestor(std::size_t a, std::size_t b) {
    std::fill(onPath_.begin(), onPath_.end(), 0);
    for (;;) {
      a = base_[a];
      onPath_[a] = 1;
      if (mate_[a] == kNone) break;
      a = parent_[mate_[a]];
    }
    for (;;) {
      b = base_[b];
      if (onPath_[b]) return b;
      b = parent_[mate_[b]];
    }
  }

  void mark_path(std::size_t v, std::size_t b, std::size_t child) {
    while (base_[v] != b) {
      inBlossom_[base_[v]] = inBlossom_[base_[mate_[v]]] = 1;
      parent_[v] = child;
      child = mate_[v];
      v = parent_[mate_[v]];
    }
  }

  // BFS over the alternating tree rooted at `root`, contracting odd cycles.
  // Returns the free endpoint of an augmenting path, or kNone.
  std::size_t find_augmenting_path(std::size_t root) {
    std::fill(inTree_.begin(), inTree_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), kNone);
    for (std::size_t i = 0; i < n_; ++i) base_[i] = i;
    inTree_[root] = 1;
    std::vector<std::size_t> queue{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t v = queue[head];
      for (std::size_t to : adj_[v]) {
        if (base_[v] == base_[to] || mate_[v] == to) continue;
        if (to == root || (mate_[to] != kNone && parent_[mate_[to]] != kNone)) {
          const std::size_t b = lowest_common_ancestor(v, to);
          std::fill(inBlossom_.begin(), inBlossom_.end(), 0);
          mark_path(v, b, to);
          mark_path(to, b, v);
          for (std::size_t i = 0; i < n_; ++i) {
            if (!inBlossom_[base_[i]]) continue;
            base_[i] = b;
            if (!inTree_[i]) {
              inTree_[i] = 1;
              queue.push_back(i);
            }
          }
        } else if (parent_[to] == kNone) {
          parent_[to] = v;
          if (mate_[to] == kNone) return to;
          inTree_[mate_[to]] = 1;
          queue.push_back(mate_[to]);
        }
      }
    }
    return kNone;
  }

  std::size_t n_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> mate_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> base_;
  std::vector<char> inTree_;
  std::vector<char> inBlossom_;
  std::vector<char> onPath_;
};

}  // namespace

Matching max_matching(const Graph& g) { return Blossom(g).solve(); }

Matching greedy_matching(const Graph& g) {
  std::vector<std::size_t> mate(g.vertex_count(), kNone);
  for (const auto& [a, b] : g.edges()) {
    if (mate[a] == kNone && mate[b] == kNone) {
      mate[a] = b;
      mate[b] = a;
    }
  }
  return collect(mate);
}

namespace {

struct BruteSearch {
  const std::vector<std::vector<std::size_t>>& adj;
  std::vector<std::size_t> mate;
  std::vector<std::size_t> best;
  std::size_t bestSize = 0;
  std::size_t n;

  void run(std::size_t v, std::size_t size) {
    while (v < n && mate[v] != kNone) ++v;
    if (v >= n) {
      if (size > bestSize) {
        bestSize = size;
        best = mate;
      }
      return;
    }
    // Upper bound: every remaining free vertex pairs up.
    std::size_t freeLeft = 0;
    for (std::size_t u = v; u < n; ++u) freeLeft += mate[u] == kNone;
    if (size + freeLeft / 2 <= bestSize) return;

    for (std::size_t u : adj[v]) {
      if (u <= v || mate[u] != kNone) continue;
      mate[v] = u;
      mate[u] = v;
      run(v + 1, size + 1);
      mate[v] = mate[u] = kNone;
    }
    // Leave v unmatched; mark it so the scan skips it.
    mate[v] = v;
    run(v + 1, size);
    mate[v] = kNone;
  }
};

}  // namespace

Matching max_matching_brute(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kMatchingBruteMaxVertices) throw SizeError("max_matching_brute: more than 14 vertices");
  const auto adj = g.adjacency();
  BruteSearch search{adj, std::vector<std::size_t>(n, kNone), std::vector<std::size_t>(n, kNone),
                     0, n};
  search.run(0, 0);
  for (std::size_t v = 0; v < n; ++v)
    if (search.best[v] == v) search.best[v] = kNone;
  return collect(search.best);
}

}  // namespace pmlab
