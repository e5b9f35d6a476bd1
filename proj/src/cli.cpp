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

#include "pmlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "pmlab/experiments.hpp"
#include "pmlab/matching.hpp"
#include "pmlab/serialize.hpp"
#include "pmlab/svg.hpp"
#include "pmlab/theory.hpp"

namespace pmlab {

namespace {

constexpr const char* kFooter =
    "Exit codes: 0 success, 1 verification failure, 2 usage or domain error, 3 I/O error.\n"
    "PMLAB_THREADS sets the default for --parallelism.";

// Fixed Monte Carlo budget for tau when no closed form exists.
constexpr std::uint64_t kTauSamples = std::uint64_t{1} << 20;

int default_parallelism() {
  if (const char* env = std::getenv("PMLAB_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096) throw ConfigError("PMLAB_THREADS must be a positive integer");
    return static_cast<int>(v);
  }
  return resolve_threads(0);
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") out << content;
  else write_file(path, content);
}

std::string csv_text(const std::vector<AggregateRow>& rows, bool timing) {
  std::ostringstream s;
  write_csv(s, rows, timing);
  return s.str();
}

std::string json_text(const std::vector<AggregateRow>& rows, bool timing) {
  std::ostringstream s;
  write_json(s, rows, timing);
  return s.str();
}

std::vector<double> log_grid(double lo, double hi, std::size_t perDecade) {
  std::vector<double> g;
  const double a = std::log10(lo), b = std::log10(hi);
  const auto steps = static_cast<std::size_t>(std::lround((b - a) * static_cast<double>(perDecade)));
  for (std::size_t k = 0; k <= steps; ++k)
    g.push_back(std::pow(10.0, a + static_cast<double>(k) / static_cast<double>(perDecade)));
  return g;
}

/// tau for (P, Q): closed form when available, otherwise a fixed-seed MC value.
double tau_for(const PositionSpec& p, const NoiseSpec& q, std::uint64_t seed, int threads) {
  if (auto t = tau_closed_form(p, q)) return *t;
  return tau_constant(p, q, kTauSamples, seed, threads).tau.value;
}

std::vector<double> broadcast(std::vector<double> v, std::size_t d, const char* what) {
  if (v.size() == 1 && d > 1) v.assign(d, v[0]);
  if (d != 0 && v.size() != d)
    throw ConfigError(std::string(what) + " must have 1 or d entries");
  return v;
}

NoiseSpec::Base parse_base(const std::string& s) {
  if (s == "gaussian") return NoiseSpec::Base::Gaussian;
  if (s == "rademacher") return NoiseSpec::Base::Rademacher;
  if (s == "uniform") return NoiseSpec::Base::Uniform;
  throw ConfigError("unknown base '" + s + "' (expected gaussian, rademacher or uniform)");
}

struct Common {
  std::uint64_t seed = 1;
  int parallelism = 1;
  bool noTiming = false;
  std::string out;
  std::string json;
};

void add_common(CLI::App* cmd, Common& c, bool withOut = true) {
  cmd->add_option("--seed", c.seed, "master seed")->capture_default_str();
  cmd->add_option("--parallelism", c.parallelism, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_flag("--no-timing", c.noTiming, "leave wall_clock_s empty");
  if (withOut) {
    cmd->add_option("--out", c.out, "CSV output path (default: stdout)");
    cmd->add_option("--json", c.json, "optional JSON mirror path");
  }
}

void emit_rows(const Common& c, const std::vector<AggregateRow>& rows, std::ostream& out) {
  emit(c.out, csv_text(rows, !c.noTiming), out);
  if (!c.json.empty()) write_file(c.json, json_text(rows, !c.noTiming));
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  Common common;
  std::size_t n = 100;
  std::size_t d = 2;
  std::string pos = "gaussian";
  std::string noise = "gaussian";
  std::vector<double> sigma2;
  std::size_t trials = kDefaultTrials;
  std::vector<std::string> estimators = {"lss"};
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  ExperimentConfig c;
  c.name = "simulate";
  c.positionSpec = parse_position(a.pos, a.d);
  c.noiseSpec = parse_noise(a.noise, a.d, 1.0);
  c.n = a.n;
  c.sigmaGrid = a.sigma2;
  c.trials = a.trials;
  c.masterSeed = a.common.seed;
  c.parallelism = a.common.parallelism;
  c.estimators.clear();
  for (const auto& e : a.estimators)
    c.estimators.push_back(parse_estimator(e, c.noiseSpec.direction_variances()));
  const double tau = tau_for(c.positionSpec, c.noiseSpec, derive_seed(a.common.seed, 0x7a75), c.parallelism);
  const double n = static_cast<double>(a.n), dd = static_cast<double>(a.d);
  c.theory = [=](double s2, const EstimatorKind&) { return tau * n * std::pow(s2, 0.5 * dd); };
  emit_rows(a.common, run_experiment(c), out);
  return kExitOk;
}

// --- figure-error-rate ------------------------------------------------------

struct FigureErrorArgs {
  Common common;
  std::size_t d = 2;
  std::size_t n = 100;
  bool full = false;
  std::size_t trials = 0;
  std::string outDir = ".";
};

int cmd_figure_error_rate(const FigureErrorArgs& a, std::ostream& out) {
  const std::size_t trials = a.trials ? a.trials : (a.full ? kFullTrials : kDefaultTrials);
  const std::vector<double> grid = log_grid(1e-5, 1e-1, 2);
  const PositionSpec pos = PositionSpec::isotropic_gaussian(a.d);
  const double n = static_cast<double>(a.n), dd = static_cast<double>(a.d);

  std::vector<AggregateRow> rows;
  std::vector<PlotSeries> series;
  const std::vector<std::pair<std::string, std::string>> families = {
      {"gaussian", "Gaussian"}, {"sphere", "Spherical"}, {"uniform", "Uniform"}, {"rademacher", "Rademacher"}};
  for (std::size_t f = 0; f < families.size(); ++f) {
    ExperimentConfig c;
    c.name = "figure-error-rate";
    c.positionSpec = pos;
    c.noiseSpec = parse_noise(families[f].first, a.d, 1.0);
    c.n = a.n;
    c.sigmaGrid = grid;
    c.trials = trials;
    c.masterSeed = derive_seed(a.common.seed, f);
    c.parallelism = a.common.parallelism;
    const double tau = tau_for(pos, c.noiseSpec, derive_seed(a.common.seed, 0x7a75 + f), c.parallelism);
    c.theory = [=](double s2, const EstimatorKind&) { return tau * n * std::pow(s2, 0.5 * dd); };
    const auto part = run_experiment(c);
    PlotSeries s{families[f].second, {}, {}, false};
    for (const auto& r : part) {
      s.x.push_back(r.sigma2);
      s.y.push_back(r.meanErrorRate);
    }
    series.push_back(std::move(s));
    rows.insert(rows.end(), part.begin(), part.end());
  }
  const double tauGauss = *tau_closed_form(pos, NoiseSpec::isotropic_gaussian(a.d, 1.0));
  PlotSeries pred{"Gaussian prediction", {}, {}, true};
  for (double s2 : grid) {
    pred.x.push_back(s2);
    pred.y.push_back(tauGauss * n * n * std::pow(s2, 0.5 * dd) / n);
  }
  series.push_back(std::move(pred));

  const std::string stem = (std::filesystem::path(a.outDir) / ("figure-error-rate-d" + std::to_string(a.d))).string();
  write_file(stem + ".csv", csv_text(rows, !a.common.noTiming));
  if (!a.common.json.empty()) write_file(a.common.json, json_text(rows, !a.common.noTiming));
  PlotOptions opt{"LSS error rate, n = " + std::to_string(a.n) + ", d = " + std::to_string(a.d),
                  "sigma^2", "E[hamming] / n", true, true};
  write_file(stem + ".svg", render_line_chart(series, opt));
  out << stem << ".csv\n" << stem << ".svg\n";
  return kExitOk;
}

// --- rgg-sweep / figure-rgg -------------------------------------------------

struct RggArgs {
  Common common;
  std::size_t n = 200;
  std::size_t d = 2;
  std::string pos = "gaussian";
  std::vector<double> r;
  std::string norm = "l2";
  std::size_t trials = 200;
  double rd = 0.0;
  double gamma = 0.5;
  double beta = 1.0;
  std::string outDir = ".";
};

RggConfig rgg_config(const RggArgs& a, std::vector<double> defaultGrid) {
  RggConfig c;
  c.positionSpec = parse_position(a.pos, a.d);
  c.n = a.n;
  c.rGrid = a.r.empty() ? std::move(defaultGrid) : a.r;
  c.norm = parse_norm(a.norm);
  c.trials = a.trials;
  c.masterSeed = a.common.seed;
  c.parallelism = a.common.parallelism;
  c.ld = LDParams::gaussian(a.d);
  if (a.rd > 0.0) c.ld.Rd = a.rd;
  c.ld.gamma = a.gamma;
  c.ld.beta = a.beta;
  c.ld.norm = c.norm;
  return c;
}

int cmd_rgg_sweep(const RggArgs& a, std::ostream& out) {
  if (a.r.empty()) throw ConfigError("rgg-sweep requires --r");
  emit_rows(a.common, run_rgg_sweep(rgg_config(a, {})), out);
  return kExitOk;
}

int cmd_figure_rgg(const RggArgs& a, std::ostream& out) {
  const RggConfig c = rgg_config(a, log_grid(1e-2, 1.0, 2));
  const auto rows = run_rgg_sweep(c);
  PlotSeries m{"mean |M_r|", {}, {}, false}, e{"min(mean |E|, n)", {}, {}, false},
      b{"matching lower bound", {}, {}, true};
  for (const auto& r : rows) {
    if (r.estimator == "max_matching") {
      m.x.push_back(r.sigma2);
      m.y.push_back(r.meanHamming);
      b.x.push_back(r.sigma2);
      b.y.push_back(r.theoryValue);
    } else {
      e.x.push_back(r.sigma2);
      e.y.push_back(std::min(r.meanHamming, static_cast<double>(r.n)));
    }
  }
  const std::string stem = (std::filesystem::path(a.outDir) / ("figure-rgg-d" + std::to_string(a.d))).string();
  write_file(stem + ".csv", csv_text(rows, !a.common.noTiming));
  if (!a.common.json.empty()) write_file(a.common.json, json_text(rows, !a.common.noTiming));
  PlotOptions opt{"Random geometric graph matchings, n = " + std::to_string(a.n), "r", "size", true, true};
  write_file(stem + ".svg", render_line_chart({m, e, b}, opt));
  out << stem << ".csv\n" << stem << ".svg\n";
  return kExitOk;
}

// --- recovery ---------------------------------------------------------------

struct RecoveryArgs {
  Common common;
  std::size_t n = 100;
  std::size_t d = 0;
  std::vector<double> sigmaX{1.0};
  std::vector<double> sigmaZ{1.0};
  std::vector<double> scales{1.0};
  std::string base = "gaussian";
  std::size_t trials = 200;
};

int cmd_recovery(const RecoveryArgs& a, std::ostream& out) {
  const std::size_t d = a.d ? a.d : std::max(a.sigmaX.size(), a.sigmaZ.size());
  RecoveryConfig c;
  c.sigmaX2 = broadcast(a.sigmaX, d, "--sigma-x");
  c.sigmaZ2 = broadcast(a.sigmaZ, d, "--sigma-z");
  c.base = parse_base(a.base);
  c.scales = a.scales;
  c.n = a.n;
  c.trials = a.trials;
  c.masterSeed = a.common.seed;
  c.parallelism = a.common.parallelism;
  const RecoveryResult r = run_recovery_sweep(c);
  emit_rows(a.common, r.rows, out);
  return kExitOk;
}

// --- bounds -----------------------------------------------------------------

struct BoundsArgs {
  double n = 100;
  std::size_t d = 2;
  double sigma = 0.1;
  double gamma = 0.5;
  double beta = 1.0;
  double r = 1.0;
  double rd = 0.0;
  double K = 1.0;
  std::string pos = "gaussian";
  std::string noise = "gaussian";
  std::uint64_t samples = std::uint64_t{1} << 20;
  std::uint64_t seed = 1;
  int parallelism = 1;
  std::vector<double> sigmaX;
  std::vector<double> sigmaZ;
  double s = 0.0;
  double v = 0.0;
  double a = 1.0;
  double sigma2 = 1.0;
};

TheoryReport bounds_report(const std::string& which, const BoundsArgs& b) {
  TheoryReport t;
  t.name = which;
  auto dd = static_cast<double>(b.d);
  if (which == "minimax") {
    t.value = minimax_lower_bound(b.n, b.d, b.sigma, b.gamma, b.beta);
    t.inputs = {{"n", b.n}, {"d", dd}, {"sigma", b.sigma}, {"gamma", b.gamma}, {"beta", b.beta}};
    t.formulaRef = "gamma^2/32 * exp(-7 beta d) * min(n^2 sigma^d, n)";
  } else if (which == "matching") {
    const double rd = b.rd > 0.0 ? b.rd : std::sqrt(2.0 * dd);
    t.value = matching_size_lower_bound(b.n, b.d, b.r, rd, b.gamma, b.beta);
    t.inputs = {{"n", b.n}, {"d", dd}, {"r", b.r}, {"Rd", rd}, {"gamma", b.gamma}, {"beta", b.beta}};
    t.formulaRef = "gamma^2/16 * exp(-6 beta d) * min(n^2 (r/Rd)^d, n)";
  } else if (which == "lss-upper") {
    t.value = lss_upper_bound(b.n, b.d, b.sigma, b.K);
    t.inputs = {{"n", b.n}, {"d", dd}, {"sigma", b.sigma}, {"K", b.K}};
    t.formulaRef = "min(3 K^d n^2 sigma^d, n)";
  } else if (which == "hp") {
    const HpBounds h = hp_bounds(b.n, b.d, b.sigma, b.gamma, b.beta);
    t.value = h.hpLss;
    t.components = {{"hp_matching", h.hpMatching}, {"hp_lss", h.hpLss}, {"positive_probability", h.positiveProbability}};
    t.inputs = {{"n", b.n}, {"d", dd}, {"sigma", b.sigma}, {"gamma", b.gamma}, {"beta", b.beta}};
    t.formulaRef = "gamma^2/{32,64,128} * exp(-{6,7,7} beta d) * min(n^2 sigma^d, n)";
  } else if (which == "tau") {
    const PositionSpec p = parse_position(b.pos, b.d);
    const NoiseSpec q = parse_noise(b.noise, b.d, 1.0);
    const TauEstimate e = tau_constant(p, q, b.samples, b.seed, b.parallelism);
    t.value = e.tau.value;
    t.components = {{"std_error", e.tau.stdError},
                    {"density_mean", e.densityMean.value},
                    {"noise_moment", e.noiseMoment.value}};
    if (auto exact = tau_closed_form(p, q)) t.components.emplace_back("closed_form", *exact);
    t.inputs = {{"d", dd}, {"samples", static_cast<double>(b.samples)}, {"seed", static_cast<double>(b.seed)}};
    t.formulaRef = "2^-d * rho_d * E[f_P(X)] * E||Z1 - Z2||^d (" + p.label() + "/" + q.label() + ")";
  } else if (which == "aug-rate") {
    const PositionSpec p = parse_position(b.pos, b.d);
    const NoiseSpec q = parse_noise(b.noise, b.d, 1.0);
    const McEstimate e = augmenting_2cycle_rate(p, q, b.sigma, b.samples, b.seed, b.parallelism);
    t.value = e.value;
    t.components = {{"std_error", e.stdError}, {"degenerate", e.degenerate ? 1.0 : 0.0}};
    t.inputs = {{"d", dd}, {"sigma", b.sigma}, {"samples", static_cast<double>(b.samples)},
                {"seed", static_cast<double>(b.seed)}};
    t.formulaRef = "P((1 2) augmenting) / sigma^d (" + p.label() + "/" + q.label() + ")";
  } else if (which == "snr" || which == "stable-ranks") {
    const std::size_t d = std::max(b.sigmaX.size(), b.sigmaZ.size());
    HDParams h{broadcast(b.sigmaX, d, "--sigma-x"), broadcast(b.sigmaZ, d, "--sigma-z"), 1.0, 1.0, b.n};
    t.inputs = {{"d", static_cast<double>(d)}, {"n", b.n}};
    if (which == "snr") {
      const double lss = snr_lss(h), lssc = snr_lssc(h);
      t.value = lss;
      t.components = {{"lss", lss}, {"lssc", lssc}};
      t.formulaRef = "sum(sX) / sum(sX~ sZ) / log n ; sum(sX) * sum(sX~ / sZ) / log n";
    } else {
      const StableRanks s = stable_ranks(h);
      t.value = s.x;
      t.components = {{"sigma_z_sigma_x", s.zx}, {"sigma_x", s.x}, {"sigma_z_inv_sigma_x", s.zinvx}};
      t.formulaRef = "sum(diag) / max(diag)";
    }
  } else if (which == "gaussian-q") {
    t.value = gaussian_q(b.s);
    t.inputs = {{"s", b.s}};
    t.formulaRef = "1 - Phi(s / sqrt(2))";
  } else if (which == "tv-lower") {
    t.value = gaussian_tv_lower(b.v);
    t.inputs = {{"v_norm_sq", b.v}};
    t.formulaRef = "exp(-||v||^2) / 2";
  } else if (which == "log-regime") {
    const LogRegime l = log_regime(b.a, b.sigma2);
    t.value = l.alpha;
    t.components = {{"gamma_star", l.gammaStar}, {"alpha", l.alpha}};
    t.inputs = {{"a", b.a}, {"sigma2", b.sigma2}};
    t.formulaRef = "gamma* = 2 / (1 + 1/sigma^2); alpha = 2 - (a/2) log(1 + 1/sigma^2)";
  } else {
    throw ConfigError("unknown formula '" + which + "'");
  }
  if (!std::isfinite(t.value)) throw DomainError("formula value is not finite");
  return t;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(bool quick, std::uint64_t seed, const CliHooks& hooks, std::ostream& out) {
  VerifyOptions opt;
  opt.quick = quick;
  if (seed != 0) opt.seed = seed;
  opt.matcher = hooks.matcher;
  const auto results = run_verification(opt);
  bool ok = true;
  out << std::left << std::setw(22) << "suite" << std::setw(8) << "cases" << std::setw(10) << "failures"
      << "status\n";
  for (const auto& r : results) {
    out << std::left << std::setw(22) << r.name << std::setw(8) << r.cases << std::setw(10) << r.failures
        << (r.passed ? "PASS" : "FAIL");
    if (!r.detail.empty()) out << "  " << r.detail;
    out << '\n';
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliHooks& hooks) {
  CLI::App app{"Planted matching experiments: estimators, bounds and reproduction runs", "pmlab"};
  app.footer(kFooter);
  app.require_subcommand(1);

  int defaultThreads = 1;
  try {
    defaultThreads = default_parallelism();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  SimulateArgs sim;
  sim.common.parallelism = defaultThreads;
  auto* simCmd = app.add_subcommand("simulate", "Monte Carlo error of estimators over a sigma^2 grid");
  add_common(simCmd, sim.common);
  simCmd->add_option("--n", sim.n)->check(CLI::PositiveNumber)->capture_default_str();
  simCmd->add_option("--d", sim.d)->check(CLI::PositiveNumber)->capture_default_str();
  simCmd->add_option("--pos", sim.pos, "gaussian|diag-gaussian|uniform|laplace")->capture_default_str();
  simCmd->add_option("--noise", sim.noise, "gaussian|sphere|uniform|rademacher")->capture_default_str();
  simCmd->add_option("--sigma2", sim.sigma2, "comma-separated sigma^2 grid")->delimiter(',')->required();
  simCmd->add_option("--trials", sim.trials)->check(CLI::PositiveNumber)->capture_default_str();
  simCmd->add_option("--estimator", sim.estimators, "lss|lssc|greedy-distance|greedy-inner (comma list)")
      ->delimiter(',');

  FigureErrorArgs fig;
  fig.common.parallelism = defaultThreads;
  auto* figCmd = app.add_subcommand("figure-error-rate", "LSS error rate for four noise families (CSV + SVG)");
  add_common(figCmd, fig.common, false);
  figCmd->add_option("--json", fig.common.json, "optional JSON mirror path");
  figCmd->add_option("--d", fig.d)->check(CLI::IsMember({2, 3}))->capture_default_str();
  figCmd->add_option("--n", fig.n)->check(CLI::PositiveNumber)->capture_default_str();
  figCmd->add_flag("--full", fig.full, "10000 trials per point instead of 2000");
  figCmd->add_option("--trials", fig.trials, "override the trial count")->check(CLI::PositiveNumber);
  figCmd->add_option("--out-dir", fig.outDir)->capture_default_str();

  RggArgs rgg;
  rgg.common.parallelism = defaultThreads;
  auto* rggCmd = app.add_subcommand("rgg-sweep", "Maximum matchings of random geometric graphs over an r grid");
  RggArgs figRgg;
  figRgg.common.parallelism = defaultThreads;
  auto* figRggCmd = app.add_subcommand("figure-rgg", "RGG matching sizes against the lower bound (CSV + SVG)");
  for (auto [cmd, args] : {std::pair{rggCmd, &rgg}, std::pair{figRggCmd, &figRgg}}) {
    add_common(cmd, args->common, cmd == rggCmd);
    if (cmd == figRggCmd) {
      cmd->add_option("--json", args->common.json, "optional JSON mirror path");
      cmd->add_option("--out-dir", args->outDir)->capture_default_str();
    }
    cmd->add_option("--n", args->n)->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--d", args->d)->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--pos", args->pos)->capture_default_str();
    cmd->add_option("--r", args->r, "comma-separated radius grid")->delimiter(',');
    cmd->add_option("--norm", args->norm, "l1|l2|linf")->capture_default_str();
    cmd->add_option("--trials", args->trials)->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--rd", args->rd, "Rd (default sqrt(2d))");
    cmd->add_option("--gamma", args->gamma)->capture_default_str();
    cmd->add_option("--beta", args->beta)->capture_default_str();
  }

  RecoveryArgs rec;
  rec.common.parallelism = defaultThreads;
  auto* recCmd = app.add_subcommand("recovery", "Perfect-recovery fractions of LSS and LSS-C in the diagonal model");
  add_common(recCmd, rec.common);
  recCmd->add_option("--n", rec.n)->check(CLI::PositiveNumber)->capture_default_str();
  recCmd->add_option("--d", rec.d, "dimension (broadcasts scalar diagonals)");
  recCmd->add_option("--sigma-x", rec.sigmaX, "diagonal of Sigma_X")->delimiter(',');
  recCmd->add_option("--sigma-z", rec.sigmaZ, "diagonal of Sigma_Z (all zero: noiseless)")->delimiter(',');
  recCmd->add_option("--scales", rec.scales, "multipliers of Sigma_Z")->delimiter(',');
  recCmd->add_option("--base", rec.base, "gaussian|rademacher|uniform")->capture_default_str();
  recCmd->add_option("--trials", rec.trials)->check(CLI::PositiveNumber)->capture_default_str();

  BoundsArgs bnd;
  bnd.parallelism = defaultThreads;
  auto* bndCmd = app.add_subcommand("bounds", "Evaluate a closed-form quantity and print it as JSON");
  bndCmd->require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> formulas = {
      {"minimax", "minimax lower bound on E[hamming]"},
      {"matching", "lower bound on the RGG maximum matching"},
      {"lss-upper", "LSS upper bound with caller constant K"},
      {"hp", "high-probability and positive-probability thresholds"},
      {"tau", "Monte Carlo tau constant"},
      {"aug-rate", "augmenting 2-cycle probability / sigma^d"},
      {"snr", "high-dimensional SNR of LSS and LSS-C"},
      {"stable-ranks", "stable ranks of Sigma_Z Sigma_X, Sigma_X, Sigma_Z^-1 Sigma_X"},
      {"gaussian-q", "1 - Phi(s / sqrt 2)"},
      {"tv-lower", "Gaussian lower bound exp(-|v|^2)/2"},
      {"log-regime", "gamma* and alpha in the logarithmic regime"}};
  std::map<std::string, CLI::App*> formulaCmds;
  for (const auto& [name, help] : formulas) {
    auto* f = bndCmd->add_subcommand(name, help);
    formulaCmds[name] = f;
    auto real = [&](const char* flag, double& v) { f->add_option(flag, v)->capture_default_str(); };
    if (name == "minimax" || name == "matching" || name == "lss-upper" || name == "hp" || name == "snr")
      real("--n", bnd.n);
    if (name == "minimax" || name == "matching" || name == "lss-upper" || name == "hp" || name == "tau" ||
        name == "aug-rate")
      f->add_option("--d", bnd.d)->check(CLI::PositiveNumber)->capture_default_str();
    if (name == "minimax" || name == "lss-upper" || name == "hp" || name == "aug-rate") real("--sigma", bnd.sigma);
    if (name == "minimax" || name == "matching" || name == "hp") {
      real("--gamma", bnd.gamma);
      real("--beta", bnd.beta);
    }
    if (name == "matching") {
      real("--r", bnd.r);
      f->add_option("--rd", bnd.rd, "Rd (default sqrt(2d))");
    }
    if (name == "lss-upper") real("--K", bnd.K);
    if (name == "tau" || name == "aug-rate") {
      f->add_option("--pos", bnd.pos)->capture_default_str();
      f->add_option("--noise", bnd.noise)->capture_default_str();
      f->add_option("--samples", bnd.samples)->check(CLI::PositiveNumber)->capture_default_str();
      f->add_option("--seed", bnd.seed)->capture_default_str();
      f->add_option("--parallelism", bnd.parallelism)->check(CLI::PositiveNumber);
    }
    if (name == "snr" || name == "stable-ranks") {
      f->add_option("--sigma-x", bnd.sigmaX, "diagonal of Sigma_X")->delimiter(',')->required();
      f->add_option("--sigma-z", bnd.sigmaZ, "diagonal of Sigma_Z")->delimiter(',')->required();
    }
    if (name == "gaussian-q") real("--s", bnd.s);
    if (name == "tv-lower") real("--v", bnd.v);
    if (name == "log-regime") {
      real("--a", bnd.a);
      real("--sigma2", bnd.sigma2);
    }
  }

  bool quick = false;
  std::uint64_t verifySeed = 0;
  auto* verCmd = app.add_subcommand("verify", "Run the oracle suites; exit 1 on any failure");
  verCmd->add_flag("--quick", quick, "halve every corpus");
  verCmd->add_option("--seed", verifySeed, "override the corpus seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (simCmd->parsed()) return cmd_simulate(sim, out);
    if (figCmd->parsed()) return cmd_figure_error_rate(fig, out);
    if (rggCmd->parsed()) return cmd_rgg_sweep(rgg, out);
    if (figRggCmd->parsed()) return cmd_figure_rgg(figRgg, out);
    if (recCmd->parsed()) return cmd_recovery(rec, out);
    if (verCmd->parsed()) return cmd_verify(quick, verifySeed, hooks, out);
    if (bndCmd->parsed()) {
      for (const auto& [name, cmd] : formulaCmds)
        if (cmd->parsed()) {
          out << bounds_report(name, bnd).to_json() << '\n';
          return kExitOk;
        }
    }
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {  // ConfigError, InputError
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace pmlab
