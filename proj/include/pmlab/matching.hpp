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

#include "pmlab/graph.hpp"

namespace pmlab {

/// Maximum-cardinality matching in a general graph (Edmonds' blossom
/// algorithm, seeded with the greedy matching). Deterministic.
Matching max_matching(const Graph& g);

/// Maximal matching: scans edges in sorted order and keeps every edge whose
/// endpoints are both free. At least half the maximum size.
Matching greedy_matching(const Graph& g);

/// Exhaustive maximum matching; at most 14 vertices (SizeError otherwise).
Matching max_matching_brute(const Graph& g);

inline constexpr std::size_t kMatchingBruteMaxVertices = 14;

}  // namespace pmlab
