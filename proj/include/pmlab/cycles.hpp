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

#include <vector>

#include "pmlab/estimators.hpp"
#include "pmlab/graph.hpp"
#include "pmlab/model.hpp"

namespace pmlab {

/// Distinct observation indices (i_1, ..., i_t), t >= 2, read cyclically.
struct Cycle {
  std::vector<std::size_t> indices;

  /// Throws InputError on t < 2, repeats, or an index >= n.
  void validate(std::size_t n) const;
};

/// sum_k w(i_k, i_{k+1}) - sum_k w(i_k, i_k) with i_{t+1} = i_1 and
/// w(a, b) = <X_{ref(a)}, Y_b> (LSS) or <Sigma_Z^{-1} X_{ref(a)}, Y_b> (LSSC).
double augmenting_margin(const Instance& instance, const Cycle& cycle, const EstimatorKind& kind,
                         const Permutation& reference);

/// Non-strict: a cycle is augmenting iff its margin is >= 0.
bool is_augmenting(const Instance& instance, const Cycle& cycle, const EstimatorKind& kind,
                   const Permutation& reference);

/// Nontrivial cycles of `estimate` relative to `reference`, oriented so that
/// estimate(i_{k+1}) = reference(i_k); these are the cycles whose rotation
/// turns `reference` into `estimate`. Their lengths sum to the Hamming
/// distance.
std::vector<Cycle> mistake_cycles(const Permutation& estimate, const Permutation& reference);

/// Graph of augmenting 2-cycles on X-labels (pistar relabelled to the
/// identity): {a, b} is an edge iff
///   <X_a, Y'_b> + <X_b, Y'_a> >= <X_a, Y'_a> + <X_b, Y'_b>,  Y'_k = Y_{pistar^{-1}(k)}.
Graph build_gaug(const Instance& instance, int threads = 0);

struct GaugBound {
  std::size_t hamming = 0;
  std::size_t matchingSize = 0;
  bool holds = true;
};

/// Runs LSS, builds G^aug and checks hamming(LSS, pistar) >= |max matching|.
GaugBound verify_gaug_bound(const Instance& instance, int threads = 1);
/// Same check against a precomputed LSS estimate.
GaugBound verify_gaug_bound(const Instance& instance, const Permutation& lss, int threads = 1);

namespace serial {
Graph build_gaug(const Instance& instance);
}

}  // namespace pmlab
