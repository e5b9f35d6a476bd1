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

#include <string>
#include <string_view>
#include <vector>

#include "pmlab/model.hpp"

namespace pmlab {

struct EstimatorKind {
  enum class Type { LSS, LSSC, GreedyDistance, GreedyInnerProduct };

  Type type = Type::LSS;
  /// Diagonal of Sigma_Z (LSSC only). Only ratios matter for the argmin.
  std::vector<double> sigmaZ;

  static EstimatorKind lss() { return {Type::LSS, {}}; }
  static EstimatorKind lssc(std::vector<double> sigmaZ) { return {Type::LSSC, std::move(sigmaZ)}; }
  static EstimatorKind greedy_distance() { return {Type::GreedyDistance, {}}; }
  static EstimatorKind greedy_inner_product() { return {Type::GreedyInnerProduct, {}}; }

  /// "lss", "lssc", "greedy-distance", "greedy-inner".
  std::string label() const;
  /// Throws ConfigError for a non-positive or mis-sized Sigma_Z.
  void validate(std::size_t d) const;

  friend bool operator==(const EstimatorKind&, const EstimatorKind&) = default;
};

/// Parses a label; "lssc" takes `sigmaZ` (may be empty until bound to a d).
EstimatorKind parse_estimator(std::string_view name, std::vector<double> sigmaZ = {});

/// c(i, j) = ||X_i - Y_j||^2 (LSS, GreedyDistance) or
/// ||Sigma_Z^{-1/2}(X_i - Y_j)||^2 (LSSC) or -<X_i, Y_j> (GreedyInnerProduct).
Matrix cost_matrix(const Instance& instance, const EstimatorKind& kind, int threads = 1);

Permutation estimate(const Instance& instance, const EstimatorKind& kind, int threads = 1);

/// Number of positions where a and b disagree. InputError on length mismatch.
std::size_t hamming(const Permutation& a, const Permutation& b);

/// sum_j ||X_{p(j)} - Y_j||^2.
double lss_objective(const Instance& instance, const Permutation& p);

namespace serial {
Matrix cost_matrix(const Instance& instance, const EstimatorKind& kind);
}

}  // namespace pmlab
