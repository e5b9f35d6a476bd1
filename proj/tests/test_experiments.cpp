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

#include <json.hpp>

#include "oracles.hpp"
#include "pmlab/experiments.hpp"
#include "pmlab/rng.hpp"

using namespace pmlab;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.positionSpec = PositionSpec::isotropic_gaussian(2);
  c.noiseSpec = NoiseSpec::isotropic_gaussian(2, 1.0);
  c.n = 30;
  c.sigmaGrid = {1e-3, 1e-2};
  c.trials = 60;
  c.estimators = {EstimatorKind::lss(), EstimatorKind::greedy_distance(), EstimatorKind::greedy_inner_product()};
  c.masterSeed = 17;
  return c;
}

std::string csv(const std::vector<AggregateRow>& rows) {
  std::ostringstream s;
  write_csv(s, rows, false);
  return s.str();
}

}  // namespace

TEST_CASE("config validation") {
  ExperimentConfig c = small_config();
  c.sigmaGrid = {1e-2, 1e-3};
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
  c = small_config();
  c.trials = 0;
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
  c = small_config();
  c.sigmaGrid = {-1.0};
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
  c = small_config();
  c.estimators = {EstimatorKind::lssc({1.0})};
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
}

TEST_CASE("zero noise gives zero error for every estimator") {
  ExperimentConfig c = small_config();
  c.sigmaGrid = {0.0};
  for (const auto& row : run_experiment(c)) {
    CHECK(row.meanHamming == 0.0);
    CHECK(row.perfectRecoveryFraction == 1.0);
    CHECK(row.stdError == 0.0);
  }
}

TEST_CASE("results do not depend on parallelism") {
  ExperimentConfig c = small_config();
  c.parallelism = 1;
  const auto a = run_experiment(c);
  c.parallelism = 8;
  const auto b = run_experiment(c);
  const auto s = serial::run_experiment(c);
  CHECK(csv(a) == csv(b));
  CHECK(csv(a) == csv(s));
  REQUIRE(a.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].sum == b[i].sum);
    CHECK(a[i].sumSq == s[i].sumSq);
  }
}

TEST_CASE("aggregates match a manual recomputation") {
  ExperimentConfig c = small_config();
  c.estimators = {EstimatorKind::lss()};
  c.sigmaGrid = {0.05};
  const auto rows = run_experiment(c);
  REQUIRE(rows.size() == 1);
  const std::uint64_t gridSeed = derive_seed(c.masterSeed, 0);
  std::vector<double> h;
  std::size_t zeros = 0;
  for (std::size_t t = 0; t < c.trials; ++t) {
    const Instance inst = sample_instance(c.positionSpec, c.noiseSpec.with_sigma(std::sqrt(0.05)), c.n,
                                          derive_seed(gridSeed, t));
    h.push_back(static_cast<double>(hamming(estimate(inst, EstimatorKind::lss()), inst.pistar)));
    zeros += h.back() == 0.0;
  }
  // Order-independent: sum in reverse.
  double sum = 0.0, sq = 0.0;
  for (auto it = h.rbegin(); it != h.rend(); ++it) {
    sum += *it;
    sq += *it * *it;
  }
  const double t = static_cast<double>(c.trials);
  const double mean = sum / t;
  const double se = std::sqrt((sq - sum * sum / t) / (t - 1.0) / t) / static_cast<double>(c.n);
  CHECK(rows[0].meanHamming == mean);
  CHECK(rows[0].meanErrorRate == doctest::Approx(mean / 30.0).epsilon(1e-15));
  CHECK(rows[0].stdError == doctest::Approx(se).epsilon(1e-12));
  CHECK(rows[0].perfectRecoveryFraction == static_cast<double>(zeros) / t);
  CHECK(rows[0].seed == gridSeed);
  CHECK(rows[0].gaugViolations == 0);
}

TEST_CASE("theory hook fills the theory column") {
  ExperimentConfig c = small_config();
  c.theory = [](double s2, const EstimatorKind&) { return 2.0 * s2; };
  for (const auto& row : run_experiment(c)) CHECK(row.theoryValue == 2.0 * row.sigma2);
  c.theory = nullptr;
  for (const auto& row : run_experiment(c)) CHECK(std::isnan(row.theoryValue));
}

TEST_CASE("error rate rises with noise") {
  ExperimentConfig c = small_config();
  c.estimators = {EstimatorKind::lss()};
  c.n = 50;
  c.trials = 200;
  c.sigmaGrid = {1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
  const auto rows = run_experiment(c);
  std::vector<double> g, r;
  for (const auto& row : rows) {
    g.push_back(row.sigma2);
    r.push_back(row.meanErrorRate);
  }
  CHECK(oracle::spearman(g, r) > 0.0);
  CHECK(rows.back().meanErrorRate > rows.front().meanErrorRate);
}

TEST_CASE("recovery sweep") {
  SUBCASE("noiseless") {
    RecoveryConfig rc;
    rc.sigmaX2 = {1.0, 2.0, 3.0};
    rc.sigmaZ2 = {0.0, 0.0, 0.0};
    rc.n = 40;
    rc.trials = 10;
    const RecoveryResult r = run_recovery_sweep(rc);
    REQUIRE(r.rows.size() == 2);
    for (const auto& row : r.rows) {
      CHECK(row.perfectRecoveryFraction == 1.0);
      CHECK(std::isinf(row.theoryValue));
    }
  }
  SUBCASE("snr columns") {
    RecoveryConfig rc;
    rc.sigmaX2 = {1.0, 1.0};
    rc.sigmaZ2 = {1.0, 4.0};
    rc.scales = {0.01, 0.1};
    rc.n = 20;
    rc.trials = 10;
    const RecoveryResult r = run_recovery_sweep(rc);
    REQUIRE(r.rows.size() == 4);
    CHECK(r.snrLss.size() == 2);
    CHECK(r.rows[0].theoryValue == r.snrLss[0]);
    CHECK(r.rows[1].theoryValue == r.snrLssc[0]);
    CHECK(r.snrLssc[1] >= r.snrLss[1]);
    CHECK(r.rows[1].estimator != r.rows[0].estimator);
  }
  SUBCASE("mixed zero entries are rejected") {
    RecoveryConfig rc;
    rc.sigmaX2 = {1.0, 1.0};
    rc.sigmaZ2 = {0.0, 1.0};
    CHECK_THROWS_AS(run_recovery_sweep(rc), ConfigError);
  }
}

TEST_CASE("rgg sweep") {
  RggConfig rc;
  rc.positionSpec = PositionSpec::isotropic_gaussian(2);
  rc.n = 21;
  rc.rGrid = {1e-6, 1e6};
  rc.trials = 5;
  rc.ld = LDParams::gaussian(2);
  rc.edgeMcSamples = 1000;
  const auto rows = run_rgg_sweep(rc);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].estimator == "max_matching");
  CHECK(rows[0].meanHamming == 0.0);
  CHECK(rows[2].meanHamming == 10.0);
  CHECK(rows[3].meanHamming == 210.0);
  CHECK(rows[3].theoryValue == 210.0);
  rc.parallelism = 4;
  CHECK(csv(run_rgg_sweep(rc)) == csv(rows));
}

TEST_CASE("CSV and JSON output") {
  ExperimentConfig c = small_config();
  c.estimators = {EstimatorKind::lss()};
  c.sigmaGrid = {1e-3};
  c.trials = 5;
  const auto rows = run_experiment(c);
  const std::string text = csv(rows);
  CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  std::istringstream in(text);
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  CHECK(std::count(line.begin(), line.end(), ',') == 14);
  CHECK(line.back() == ',');  // timing column suppressed
  CHECK(line.rfind("simulate,", 0) == 0);

  std::ostringstream timed;
  write_csv(timed, rows, true);
  CHECK(timed.str().back() == '\n');
  CHECK(timed.str().substr(timed.str().rfind(',') + 1) != "\n");

  std::ostringstream js;
  write_json(js, rows, false);
  const auto j = nlohmann::json::parse(js.str());
  REQUIRE(j.is_array());
  CHECK(j[0]["estimator"] == "lss");
  CHECK(j[0]["sigma2"] == 1e-3);
  CHECK(j[0]["trials"] == 5);
  CHECK(j[0]["seed"] == rows[0].seed);
}
