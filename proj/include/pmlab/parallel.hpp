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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <omp.h>

#include "pmlab/rng.hpp"

namespace pmlab {

/// requested <= 0 means "use the OpenMP default".
inline int resolve_threads(int requested) {
  return requested > 0 ? requested : omp_get_max_threads();
}

/// Monte Carlo estimate with its standard error.
struct McEstimate {
  double value = 0.0;
  double stdError = 0.0;
  std::uint64_t samples = 0;
  /// Set when the estimator was asked for a quantity it cannot form (e.g. 0/0).
  bool degenerate = false;
};

struct Moments {
  double sum = 0.0;
  double sumSq = 0.0;
  std::uint64_t count = 0;

  void add(double x) {
    sum += x;
    sumSq += x * x;
    ++count;
  }
  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
  /// Standard error of the mean (unbiased sample variance).
  double std_error() const {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    const double var = (sumSq - sum * sum / n) / (n - 1.0);
    return std::sqrt(std::max(var, 0.0) / n);
  }
  McEstimate estimate() const { return {mean(), std_error(), count, false}; }
};

inline constexpr std::uint64_t kMcBlockSize = 1u << 14;

inline Moments reduce_blocks(const std::vector<Moments>& blocks) {
  Moments total;
  for (const auto& b : blocks) {
    total.sum += b.sum;
    total.sumSq += b.sumSq;
    total.count += b.count;
  }
  return total;
}

/// Splits `samples` draws into fixed-size blocks, block b seeded with
/// derive_seed(seed, b), and reduces in block order. The result does not
/// depend on the thread count.
///
/// kernel(Rng&, std::uint64_t count, Moments&) draws `count` samples.
template <class Kernel>
Moments block_moments(std::uint64_t samples, std::uint64_t seed, int threads, Kernel kernel) {
  const std::uint64_t nblocks = (samples + kMcBlockSize - 1) / kMcBlockSize;
  std::vector<Moments> blocks(nblocks);
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    Rng rng(derive_seed(seed, ub));
    const std::uint64_t count = std::min(kMcBlockSize, samples - ub * kMcBlockSize);
    kernel(rng, count, blocks[ub]);
  }
  return reduce_blocks(blocks);
}

namespace serial {

template <class Kernel>
Moments block_moments(std::uint64_t samples, std::uint64_t seed, Kernel kernel) {
  const std::uint64_t nblocks = (samples + kMcBlockSize - 1) / kMcBlockSize;
  std::vector<Moments> blocks(nblocks);
  for (std::uint64_t b = 0; b < nblocks; ++b) {
    Rng rng(derive_seed(seed, b));
    kernel(rng, std::min(kMcBlockSize, samples - b * kMcBlockSize), blocks[b]);
  }
  return reduce_blocks(blocks);
}

}  // namespace serial
}  // namespace pmlab
