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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmlab/model.hpp"
#include "pmlab/parallel.hpp"

namespace pmlab {

// Bound formulas. gamma must lie in (0, 1], beta >= log 2, sigma >= 0;
// violations throw DomainError.

/// gamma^2/32 * e^{-7 beta d} * min(n^2 sigma^d, n). Requires n >= 3.
double minimax_lower_bound(double n, std::size_t d, double sigma, double gamma, double beta);

/// gamma^2/16 * e^{-6 beta d} * min(n^2 (r/Rd)^d, n). Requires n >= 3, r > 0.
double matching_size_lower_bound(double n, std::size_t d, double r, double Rd, double gamma,
                                 double beta);

/// min(3 K^d n^2 sigma^d, n); K is the caller's choice of the absolute constant.
double lss_upper_bound(double n, std::size_t d, double sigma, double K);

struct HpBounds {
  double hpMatching = 0.0;           // gamma^2/32 e^{-6 beta d} min(n^2 sigma^d, n)
  double hpLss = 0.0;                // gamma^2/64 e^{-7 beta d} min(n^2 sigma^d, n)
  double positiveProbability = 0.0;  // gamma^2/128 e^{-7 beta d} min(n^2 sigma^d, n)
};
HpBounds hp_bounds(double n, std::size_t d, double sigma, double gamma, double beta);

/// Volume of the Euclidean unit ball, pi^{d/2} / Gamma(d/2 + 1).
double unit_ball_volume(std::size_t d);

/// E[f_P(X)] when it has a closed form (all current position families).
std::optional<double> expected_density_closed_form(const PositionSpec& position);
/// E||Z~_1 - Z~_2||_2^d when it has a closed form.
std::optional<double> noise_moment_closed_form(const NoiseSpec& noise);
/// 2^{-d} rho_d E[f_P] E||dZ||^d from the closed forms above, if both exist.
std::optional<double> tau_closed_form(const PositionSpec& position, const NoiseSpec& noise);

struct TauEstimate {
  McEstimate tau;
  McEstimate densityMean;  // E[f_P(X_1)]
  McEstimate noiseMoment;  // E||Z~_1 - Z~_2||^d
};

/// Monte Carlo tau with both expectations estimated from independent
/// streams (derive_seed(seed, 0) and (seed, 1)). The standard error of tau
/// is propagated to first order.
TauEstimate tau_constant(const PositionSpec& position, const NoiseSpec& noise,
                         std::uint64_t mcSamples, std::uint64_t seed, int threads = 0);

/// P((1 2) is augmenting) / sigma^d by Monte Carlo. sigma == 0 returns 0
/// with the degenerate flag set.
McEstimate augmenting_2cycle_rate(const PositionSpec& position, const NoiseSpec& noise,
                                  double sigma, std::uint64_t mcSamples, std::uint64_t seed,
                                  int threads = 0);

/// Diagonal high-dimensional model. n is real so that log n can be set
/// freely; it must exceed 1.
struct HDParams {
  std::vector<double> sigmaX2;
  std::vector<double> sigmaZ2;
  double KX = 1.0;
  double KZ = 1.0;
  double n = 3.0;

  /// Throws DomainError on empty or mismatched diagonals, non-positive
  /// entries or n <= 1.
  void validate() const;
};

double snr_lss(const HDParams& params);
double snr_lssc(const HDParams& params);

struct StableRanks {
  double zx = 0.0;     // Sigma_Z Sigma_X
  double x = 0.0;      // Sigma_X
  double zinvx = 0.0;  // Sigma_Z^{-1} Sigma_X
};
StableRanks stable_ranks(const HDParams& params);

/// 1 - Phi(s / sqrt 2).
double gaussian_q(double s);

/// (1/2) exp(-vNormSq). DomainError for negative input.
double gaussian_tv_lower(double vNormSq);

/// Large-deviation rate of a normalised chi-square, (t - 1 - log t)/2.
/// DomainError for t <= 0.
double chi2_rate(double t);

struct LogRegime {
  double a = 1.0;
  double sigma2 = 1.0;
  double gammaStar = 0.0;
  double alpha = 0.0;

  double rate(double t) const { return chi2_rate(t); }
  /// 2 - (a/2) (g/2 (1 + 1/sigma2) - 1 - log(g/2)); maximised at gammaStar.
  double objective(double g) const;
};
LogRegime log_regime(double a, double sigma2);

/// One formula evaluation for the `bounds` command.
struct TheoryReport {
  std::string name;
  double value = 0.0;
  std::vector<std::pair<std::string, double>> inputs;
  /// Named outputs when a formula yields more than one number.
  std::vector<std::pair<std::string, double>> components;
  std::string formulaRef;

  std::string to_json() const;
};

}  // namespace pmlab
