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

#include "pmlab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <limits>

#include "pmlab/cycles.hpp"
#include "pmlab/matching.hpp"
#include "pmlab/serialize.hpp"

namespace pmlab {

const char* const kCsvHeader =
    "experiment,position,noise,n,d,sigma2,estimator,trials,mean_hamming,mean_error_rate,"
    "std_error,perfect_recovery_frac,theory_value,seed,wall_clock_s";

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_grid(const std::vector<double>& grid, bool allowZero, const char* what) {
  if (grid.empty()) throw ConfigError(std::string(what) + " must be nonempty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = grid[i];
    if (!std::isfinite(v) || v < 0.0 || (!allowZero && v == 0.0))
      throw ConfigError(std::string(what) + " has an out-of-range value");
    if (i > 0 && !(grid[i - 1] < v)) throw ConfigError(std::string(what) + " must be strictly increasing");
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Per-trial outputs for one grid point: hamming[e * trials + t].
struct TrialTable {
  std::vector<std::uint64_t> hamming;
  std::vector<char> violation;
};

void run_trial(const ExperimentConfig& c, const NoiseSpec& noise, std::uint64_t gridSeed,
               std::size_t t, TrialTable& out) {
  const Instance inst = sample_instance(c.positionSpec, noise, c.n, derive_seed(gridSeed, t));
  for (std::size_t e = 0; e < c.estimators.size(); ++e) {
    const auto& kind = c.estimators[e];
    const Permutation p = estimate(inst, kind, 1);
    out.hamming[e * c.trials + t] = hamming(p, inst.pistar);
    if (c.checkGaugBound && kind.type == EstimatorKind::Type::LSS)
      out.violation[t] = !verify_gaug_bound(inst, p, 1).holds;
  }
}

std::vector<AggregateRow> aggregate(const ExperimentConfig& c, std::size_t g, std::uint64_t gridSeed,
                                    const TrialTable& table, double wall) {
  std::size_t violations = 0;
  for (char v : table.violation) violations += v != 0;
  std::vector<AggregateRow> rows;
  for (std::size_t e = 0; e < c.estimators.size(); ++e) {
    AggregateRow row;
    row.experiment = c.name;
    row.position = c.positionSpec.label();
    row.noise = c.noiseSpec.label();
    row.n = c.n;
    row.d = c.positionSpec.dimension;
    row.sigma2 = c.sigmaGrid[g];
    row.estimator = c.estimators[e].label();
    row.trials = c.trials;
    for (std::size_t t = 0; t < c.trials; ++t) {
      const std::uint64_t h = table.hamming[e * c.trials + t];
      row.sum += h;
      row.sumSq += h * h;
      row.zeroCount += h == 0;
    }
    finalize_row(row);
    row.theoryValue = c.theory ? c.theory(row.sigma2, c.estimators[e]) : kNaN;
    row.seed = gridSeed;
    row.wallClockSeconds = wall;
    if (c.estimators[e].type == EstimatorKind::Type::LSS) row.gaugViolations = violations;
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class Loop>
std::vector<AggregateRow> run_grid(const ExperimentConfig& c, Loop loop) {
  c.validate();
  std::vector<AggregateRow> rows;
  for (std::size_t g = 0; g < c.sigmaGrid.size(); ++g) {
    const auto t0 = std::chrono::steady_clock::now();
    const NoiseSpec noise = c.noiseSpec.with_sigma(std::sqrt(c.sigmaGrid[g]));
    const std::uint64_t gridSeed = derive_seed(c.masterSeed, g);
    TrialTable table{std::vector<std::uint64_t>(c.trials * c.estimators.size()),
                     std::vector<char>(c.trials, 0)};
    loop(noise, gridSeed, table);
    auto part = aggregate(c, g, gridSeed, table, seconds_since(t0));
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

double binomial_mean(std::uint64_t sum, std::size_t trials) {
  return static_cast<double>(sum) / static_cast<double>(trials);
}

}  // namespace

void ExperimentConfig::validate() const {
  positionSpec.validate();
  noiseSpec.validate();
  if (positionSpec.dimension != noiseSpec.dimension)
    throw ConfigError("position and noise dimensions differ");
  if (n < 1) throw ConfigError("n must be >= 1");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (estimators.empty()) throw ConfigError("at least one estimator is required");
  if (parallelism < 1) throw ConfigError("parallelism must be >= 1");
  for (const auto& e : estimators) e.validate(positionSpec.dimension);
  check_grid(sigmaGrid, true, "sigma^2 grid");
}

void finalize_row(AggregateRow& row) {
  const double t = static_cast<double>(row.trials);
  row.meanHamming = binomial_mean(row.sum, row.trials);
  row.meanErrorRate = row.meanHamming / static_cast<double>(row.n);
  row.perfectRecoveryFraction = static_cast<double>(row.zeroCount) / t;
  if (row.trials > 1) {
    // Unbiased variance from the exact integer sums.
    const double s = static_cast<double>(row.sum), ss = static_cast<double>(row.sumSq);
    const double var = std::max(0.0, (ss - s * s / t) / (t - 1.0));
    row.stdError = std::sqrt(var / t) / static_cast<double>(row.n);
  } else {
    row.stdError = 0.0;
  }
}

std::vector<AggregateRow> run_experiment(const ExperimentConfig& config) {
  return run_grid(config, [&](const NoiseSpec& noise, std::uint64_t gridSeed, TrialTable& table) {
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(config.parallelism)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(config.trials); ++t) {
      try {
        run_trial(config, noise, gridSeed, static_cast<std::size_t>(t), table);
      } catch (...) {
#pragma omp critical(pmlab_experiment_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  });
}

std::vector<AggregateRow> serial::run_experiment(const ExperimentConfig& config) {
  return run_grid(config, [&](const NoiseSpec& noise, std::uint64_t gridSeed, TrialTable& table) {
    for (std::size_t t = 0; t < config.trials; ++t) run_trial(config, noise, gridSeed, t, table);
  });
}

RecoveryResult run_recovery_sweep(const RecoveryConfig& rc) {
  const std::size_t d = rc.sigmaX2.size();
  if (d == 0 || rc.sigmaZ2.size() != d) throw ConfigError("recovery: diagonals must have equal nonzero length");
  bool noiseless = true;
  for (double v : rc.sigmaZ2) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("recovery: Sigma_Z entries must be >= 0");
    noiseless = noiseless && v == 0.0;
  }
  if (!noiseless)
    for (double v : rc.sigmaZ2)
      if (v == 0.0) throw ConfigError("recovery: Sigma_Z must be all zero or all positive");

  ExperimentConfig c;
  c.name = "recovery";
  c.positionSpec = PositionSpec::diagonal_gaussian(rc.sigmaX2);
  const std::vector<double> zdiag = noiseless ? std::vector<double>(d, 1.0) : rc.sigmaZ2;
  c.noiseSpec = NoiseSpec::diagonal(zdiag, rc.base, 1.0);
  c.n = rc.n;
  c.trials = rc.trials;
  c.masterSeed = rc.masterSeed;
  c.parallelism = rc.parallelism;
  c.estimators = {EstimatorKind::lss(), EstimatorKind::lssc(zdiag)};
  // Noise level sqrt(scale) multiplies Sigma_Z by scale; the noiseless case
  // is the single grid point 0.
  c.sigmaGrid = noiseless ? std::vector<double>{0.0} : rc.scales;
  check_grid(c.sigmaGrid, noiseless, "recovery scales");

  RecoveryResult out;
  for (double scale : c.sigmaGrid) {
    if (noiseless) {
      out.snrLss.push_back(std::numeric_limits<double>::infinity());
      out.snrLssc.push_back(std::numeric_limits<double>::infinity());
      HDParams p{rc.sigmaX2, zdiag, 1.0, 1.0, static_cast<double>(std::max<std::size_t>(rc.n, 2))};
      out.ranks.push_back(stable_ranks(p));
      continue;
    }
    HDParams p{rc.sigmaX2, rc.sigmaZ2, 1.0, 1.0, static_cast<double>(rc.n)};
    for (double& v : p.sigmaZ2) v *= scale;
    if (rc.n > 1) {
      out.snrLss.push_back(snr_lss(p));
      out.snrLssc.push_back(snr_lssc(p));
    } else {
      out.snrLss.push_back(kNaN);
      out.snrLssc.push_back(kNaN);
    }
    out.ranks.push_back(stable_ranks(p));
  }
  c.theory = [&](double sigma2, const EstimatorKind& kind) {
    for (std::size_t g = 0; g < c.sigmaGrid.size(); ++g)
      if (c.sigmaGrid[g] == sigma2)
        return kind.type == EstimatorKind::Type::LSS ? out.snrLss[g] : out.snrLssc[g];
    return kNaN;
  };
  out.rows = run_experiment(c);
  return out;
}

std::vector<AggregateRow> run_rgg_sweep(const RggConfig& rc) {
  rc.positionSpec.validate();
  rc.ld.validate();
  if (rc.n < 1) throw ConfigError("rgg: n must be >= 1");
  if (rc.trials < 1) throw ConfigError("rgg: trials must be >= 1");
  if (rc.parallelism < 1) throw ConfigError("parallelism must be >= 1");
  check_grid(rc.rGrid, false, "r grid");
  const std::size_t d = rc.positionSpec.dimension;

  std::vector<AggregateRow> rows;
  for (std::size_t g = 0; g < rc.rGrid.size(); ++g) {
    const auto t0 = std::chrono::steady_clock::now();
    const double r = rc.rGrid[g];
    const std::uint64_t gridSeed = derive_seed(rc.masterSeed, g);
    std::vector<std::uint64_t> msize(rc.trials), ecount(rc.trials);
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(rc.parallelism)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(rc.trials); ++t) {
      try {
        const auto ut = static_cast<std::size_t>(t);
        const Matrix pts = sample_positions(rc.positionSpec, rc.n, derive_seed(gridSeed, ut));
        const Graph graph = build_rgg(pts, r, rc.norm, 1);
        ecount[ut] = graph.edges().size();
        msize[ut] = max_matching(graph).size();
      } catch (...) {
#pragma omp critical(pmlab_rgg_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    const double wall = seconds_since(t0);

    auto make = [&](const char* label, const std::vector<std::uint64_t>& v, double theory) {
      AggregateRow row;
      row.experiment = "rgg-sweep";
      row.position = rc.positionSpec.label();
      row.noise = "none";
      row.n = rc.n;
      row.d = d;
      row.sigma2 = r;
      row.estimator = label;
      row.trials = rc.trials;
      for (std::uint64_t x : v) {
        row.sum += x;
        row.sumSq += x * x;
        row.zeroCount += x == 0;
      }
      finalize_row(row);
      row.theoryValue = theory;
      row.seed = gridSeed;
      row.wallClockSeconds = wall;
      return row;
    };
    const double bound = rc.n >= 3 ? matching_size_lower_bound(static_cast<double>(rc.n), d, r,
                                                               rc.ld.Rd, rc.ld.gamma, rc.ld.beta)
                                   : kNaN;
    const double expectedEdges =
        count_expected_edges(rc.positionSpec, rc.n, r, rc.norm, rc.edgeMcSamples,
                             derive_seed(gridSeed, rc.trials), rc.parallelism)
            .value;
    rows.push_back(make("max_matching", msize, bound));
    rows.push_back(make("rgg_edges", ecount, expectedEdges));
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<AggregateRow>& rows, bool timing) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.experiment) << ',' << csv_field(r.position) << ',' << csv_field(r.noise)
        << ',' << r.n << ',' << r.d << ',' << format_double(r.sigma2) << ','
        << csv_field(r.estimator) << ',' << r.trials << ',' << format_double(r.meanHamming) << ','
        << format_double(r.meanErrorRate) << ',' << format_double(r.stdError) << ','
        << format_double(r.perfectRecoveryFraction) << ',' << format_double(r.theoryValue) << ','
        << r.seed << ',' << (timing ? format_double(r.wallClockSeconds) : std::string()) << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<AggregateRow>& rows, bool timing) {
  // Floats go through format_double so that the text round-trips and
  // non-finite values stay representable.
  out << "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    auto num = [](double v) {
      return std::isfinite(v) ? format_double(v) : "\"" + format_double(v) + "\"";
    };
    auto str = [](const std::string& s) { return nlohmann::json(s).dump(); };
    out << (i ? ",\n " : "\n ") << "{\"experiment\":" << str(r.experiment)
        << ",\"position\":" << str(r.position) << ",\"noise\":" << str(r.noise)
        << ",\"n\":" << r.n << ",\"d\":" << r.d << ",\"sigma2\":" << num(r.sigma2)
        << ",\"estimator\":" << str(r.estimator) << ",\"trials\":" << r.trials
        << ",\"mean_hamming\":" << num(r.meanHamming)
        << ",\"mean_error_rate\":" << num(r.meanErrorRate)
        << ",\"std_error\":" << num(r.stdError)
        << ",\"perfect_recovery_frac\":" << num(r.perfectRecoveryFraction)
        << ",\"theory_value\":" << num(r.theoryValue) << ",\"seed\":" << r.seed
        << ",\"wall_clock_s\":" << (timing ? num(r.wallClockSeconds) : std::string("null")) << "}";
  }
  out << "\n]\n";
}

}  // namespace pmlab
