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

// OpenMP kernels against their serial references. The argument is the
// problem size; thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>

#include "pmlab/cycles.hpp"
#include "pmlab/estimators.hpp"
#include "pmlab/experiments.hpp"
#include "pmlab/geometry.hpp"
#include "pmlab/parallel.hpp"

using namespace pmlab;

namespace {

Instance instance(std::size_t n) {
  return sample_instance(PositionSpec::isotropic_gaussian(3), NoiseSpec::isotropic_gaussian(3, 0.05), n, 1);
}

void BM_CostMatrix(benchmark::State& state) {
  const Instance inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cost_matrix(inst, EstimatorKind::lss(), 0));
}
void BM_CostMatrixSerial(benchmark::State& state) {
  const Instance inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::cost_matrix(inst, EstimatorKind::lss()));
}

void BM_BuildRgg(benchmark::State& state) {
  const Matrix pts = sample_positions(PositionSpec::isotropic_gaussian(2), static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(build_rgg(pts, 0.1, NormKind::L2, 0));
}
void BM_BuildRggSerial(benchmark::State& state) {
  const Matrix pts = sample_positions(PositionSpec::isotropic_gaussian(2), static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(serial::build_rgg(pts, 0.1, NormKind::L2));
}

void BM_BuildGaug(benchmark::State& state) {
  const Instance inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_gaug(inst, 0));
}
void BM_BuildGaugSerial(benchmark::State& state) {
  const Instance inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::build_gaug(inst));
}

struct GaussKernel {
  void operator()(Rng& rng, std::uint64_t count, Moments& m) const {
    std::normal_distribution<double> g;
    for (std::uint64_t i = 0; i < count; ++i) m.add(g(rng));
  }
};

void BM_BlockMoments(benchmark::State& state) {
  const auto samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(block_moments(samples, 3, 0, GaussKernel{}));
}
void BM_BlockMomentsSerial(benchmark::State& state) {
  const auto samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::block_moments(samples, 3, GaussKernel{}));
}

ExperimentConfig experiment(std::size_t trials) {
  ExperimentConfig c;
  c.positionSpec = PositionSpec::isotropic_gaussian(2);
  c.noiseSpec = NoiseSpec::isotropic_gaussian(2, 1.0);
  c.n = 100;
  c.sigmaGrid = {1e-3};
  c.trials = trials;
  c.parallelism = resolve_threads(0);
  return c;
}

void BM_RunExperiment(benchmark::State& state) {
  const ExperimentConfig c = experiment(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(c));
}
void BM_RunExperimentSerial(benchmark::State& state) {
  const ExperimentConfig c = experiment(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::run_experiment(c));
}

}  // namespace

BENCHMARK(BM_CostMatrix)->Arg(200)->Arg(1000);
BENCHMARK(BM_CostMatrixSerial)->Arg(200)->Arg(1000);
BENCHMARK(BM_BuildRgg)->Arg(1000)->Arg(4000);
BENCHMARK(BM_BuildRggSerial)->Arg(1000)->Arg(4000);
BENCHMARK(BM_BuildGaug)->Arg(500)->Arg(3000);
BENCHMARK(BM_BuildGaugSerial)->Arg(500)->Arg(3000);
BENCHMARK(BM_BlockMoments)->Arg(1 << 20);
BENCHMARK(BM_BlockMomentsSerial)->Arg(1 << 20);
BENCHMARK(BM_RunExperiment)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunExperimentSerial)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
