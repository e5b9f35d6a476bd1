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

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

namespace pmlab {

/// Unordered pair stored with first < second.
using Edge = std::pair<std::size_t, std::size_t>;

inline Edge make_edge(std::size_t a, std::size_t b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Simple undirected graph on {0, ..., vertexCount-1}. Edges are kept
/// sorted and unique; no self-loops.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertexCount) : vertexCount_(vertexCount) {}
  /// Normalizes, sorts and deduplicates. Throws InputError on self-loops or
  /// out-of-range endpoints.
  Graph(std::size_t vertexCount, std::vector<Edge> edges);

  std::size_t vertex_count() const { return vertexCount_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(std::size_t a, std::size_t b) const;

  /// Sorted neighbor lists.
  std::vector<std::vector<std::size_t>> adjacency() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t vertexCount_ = 0;
  std::vector<Edge> edges_;
};

/// Set of vertex-disjoint edges, sorted.
struct Matching {
  std::vector<Edge> edges;

  std::size_t size() const { return edges.size(); }
  friend bool operator==(const Matching&, const Matching&) = default;
};

/// True iff no vertex appears twice.
bool is_matching(const Matching& m, std::size_t vertexCount);
/// True iff `m` is a matching and every edge belongs to `g`.
bool is_matching_of(const Matching& m, const Graph& g);

// Edge-list text format: first line "n m", then m lines "i j" (0-based).
void write_edge_list(std::ostream& out, const Graph& g);
Graph read_edge_list(std::istream& in);

}  // namespace pmlab
