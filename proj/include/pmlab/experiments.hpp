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
#include <ostream>
#include <string>
#include <vector>

#include "pmlab/estimators.hpp"
#include "pmlab/geometry.hpp"
#include "pmlab/model.hpp"
#include "pmlab/theory.hpp"

namespace pmlab {

inline constexpr std::size_t kDefaultTrials = 2000;
inline constexpr std::size_t kFullTrials = 10000;

/// Reference value attached to each output row, given the grid value and
/// the estimator. Returns NaN when there is nothing to compare against.
using TheoryFn = std::function<double(double sigma2, const EstimatorKind& kind)>;

struct ExperimentConfig {
  std::string name = "simulate";
  PositionSpec positionSpec;
  /// The grid supplies the noise level: row g uses noiseSpec.with_sigma(sqrt(sigmaGrid[g])).
  NoiseSpec noiseSpec;
  std::size_t n = 100;
  std::vector<double> sigmaGrid;  // values of sigma^2, >= 0, strictly increasing
  std::size_t trials = kDefaultTrials;
  std::vector<EstimatorKind> estimators = {EstimatorKind::lss()};
  std::uint64_t masterSeed = 0;
  int parallelism = 1;
  /// Runs verify_gaug_bound on every trial when LSS is among the estimators.
  bool checkGaugBound = true;
  TheoryFn theory;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

/// One output row: a grid value and an estimator (or an RGG statistic).
struct AggregateRow {
  std::string experiment;
  std::string position;
  std::string noise;
  std::size_t n = 0;
  std::size_t d = 0;
  double sigma2 = 0.0;
  std::string estimator;
  std::size_t trials = 0;
  /// Exact integer sums over trials; the means below are derived from them.
  std::uint64_t sum = 0;
  std::uint64_t sumSq = 0;
  std::size_t zeroCount = 0;
  double meanHamming = 0.0;
  double meanErrorRate = 0.0;
  /// Standard error of meanErrorRate.
  double stdError = 0.0;
  double perfectRecoveryFraction = 0.0;
  double theoryValue = 0.0;
  std::uint64_t seed = 0;
  double wallClockSeconds = 0.0;
  /// Trials where hamming(LSS, pistar) < |max matching of G^aug|.
  std::size_t gaugViolations = 0;
};

/// Fills the derived means from the integer sums.
void finalize_row(AggregateRow& row);

/// Trial t at grid index g uses seed derive_seed(derive_seed(masterSeed, g), t);
/// all estimators see the same instance. Aggregates do not depend on
/// `parallelism` or scheduling.
std::vector<AggregateRow> run_experiment(const ExperimentConfig& config);

struct RecoveryConfig {
  std::vector<double> sigmaX2;
  /// Diagonal of Sigma_Z. All zeros is the noiseless case.
  std::vector<double> sigmaZ2;
  NoiseSpec::Base base = NoiseSpec::Base::Gaussian;
  /// Sigma_Z is multiplied by each scale in turn (strictly increasing).
  std::vector<double> scales = {1.0};
  std::size_t n = 100;
  std::size_t trials = 200;
  std::uint64_t masterSeed = 0;
  int parallelism = 1;
};

struct RecoveryResult {
  /// Rows for LSS and LSS-C per scale; theory_value holds the matching SNR.
  std::vector<AggregateRow> rows;
  /// Per scale.
  std::vector<double> snrLss;
  std::vector<double> snrLssc;
  std::vector<StableRanks> ranks;
};

RecoveryResult run_recovery_sweep(const RecoveryConfig& config);

struct RggConfig {
  PositionSpec positionSpec;
  std::size_t n = 200;
  std::vector<double> rGrid;  // strictly increasing, > 0
  NormKind norm = NormKind::L2;
  std::size_t trials = 200;
  std::uint64_t masterSeed = 0;
  int parallelism = 1;
  LDParams ld;
  /// Samples for the Monte Carlo expected edge count reported per r.
  std::uint64_t edgeMcSamples = 1u << 16;
};

/// Two rows per r ("max_matching" and "rgg_edges"). sigma2 holds r,
/// mean_hamming holds the mean statistic, theory_value holds the matching
/// lower bound (resp. the expected edge count).
std::vector<AggregateRow> run_rgg_sweep(const RggConfig& config);

extern const char* const kCsvHeader;

/// UTF-8, LF, shortest round-trip floats. With timing off, wall_clock_s is empty.
void write_csv(std::ostream& out, const std::vector<AggregateRow>& rows, bool timing = true);
/// JSON array with the CSV field names.
void write_json(std::ostream& out, const std::vector<AggregateRow>& rows, bool timing = true);

namespace serial {
std::vector<AggregateRow> run_experiment(const ExperimentConfig& config);
}

}  // namespace pmlab
