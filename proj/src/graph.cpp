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

#include "pmlab/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "pmlab/types.hpp"

namespace pmlab {

Graph::Graph(std::size_t vertexCount, std::vector<Edge> edges)
    : vertexCount_(vertexCount), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.first == e.second) throw InputError("Graph: self-loop");
    if (e.first >= vertexCount_ || e.second >= vertexCount_)
      throw InputError("Graph: endpoint out of range");
    e = make_edge(e.first, e.second);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Graph::has_edge(std::size_t a, std::size_t b) const {
  return std::binary_search(edges_.begin(), edges_.end(), make_edge(a, b));
}

std::vector<std::vector<std::size_t>> Graph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertexCount_);
  for (const auto& [a, b] : edges_) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

bool is_matching(const Matching& m, std::size_t vertexCount) {
  std::vector<char> used(vertexCount, 0);
  for (const auto& [a, b] : m.edges) {
    if (a == b || a >= vertexCount || b >= vertexCount) return false;
    if (used[a] || used[b]) return false;
    used[a] = used[b] = 1;
  }
  return true;
}

bool is_matching_of(const Matching& m, const Graph& g) {
  if (!is_matching(m, g.vertex_count())) return false;
  return std::all_of(m.edges.begin(), m.edges.end(),
                     [&](const Edge& e) { return g.has_edge(e.first, e.second); });
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

Graph read_edge_list(std::istream& in) {
  std::size_t n = 0, m = 0;
  if (!(in >> n >> m)) throw InputError("edge list: missing header");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t a = 0, b = 0;
    if (!(in >> a >> b)) throw InputError("edge list: expected " + std::to_string(m) + " edges");
    edges.emplace_back(a, b);
  }
  return Graph(n, std::move(edges));
}

}  // namespace pmlab
