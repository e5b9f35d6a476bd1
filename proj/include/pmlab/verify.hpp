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
#include <functional>
#include <string>
#include <vector>

#include "pmlab/graph.hpp"
#include "pmlab/types.hpp"

namespace pmlab {

using MatcherFn = std::function<Matching(const Graph&)>;

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string detail;
};

struct VerifyOptions {
  bool quick = false;
  std::uint64_t seed = 20240611;
  /// Maximum-matching routine under test; defaults to max_matching.
  MatcherFn matcher;
};

/// Oracle suites: LAP vs exhaustive search, matching vs exhaustive search,
/// the G^aug mistake bound, and Monte Carlo tau vs closed forms. Quick mode
/// halves every corpus.
std::vector<SuiteResult> run_verification(const VerifyOptions& options);

/// Uniformly random graph on `vertices` vertices, each edge kept with
/// probability p.
Graph random_graph(std::size_t vertices, double p, std::uint64_t seed);

/// Random n x n cost matrix: integers in [0, 9] when `integral`, otherwise
/// uniform reals in [0, 10).
Matrix random_cost_matrix(std::size_t n, bool integral, std::uint64_t seed);

}  // namespace pmlab
