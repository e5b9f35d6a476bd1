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

#include "pmlab/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <json.hpp>

namespace pmlab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_gamma_beta(double gamma, double beta) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in (0, 1]");
  if (!(beta >= std::log(2.0))) throw DomainError("beta must be >= log 2");
}

void check_sigma(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be finite and >= 0");
}

double dd(std::size_t d) { return static_cast<double>(d); }

double capped(double n, double base, std::size_t d) {
  return std::min(n * n * std::pow(base, dd(d)), n);
}

// log of the closed forms; nullopt when none is implemented.
std::optional<double> log_density_mean(const PositionSpec& p) {
  const double d = dd(p.dimension);
  switch (p.family) {
    case PositionSpec::Family::IsotropicGaussian: return -0.5 * d * std::log(4.0 * kPi);
    case PositionSpec::Family::DiagonalGaussian: {
      double acc = 0.0;
      for (double v : p.variances) acc -= 0.5 * std::log(4.0 * kPi * v);
      return acc;
    }
    case PositionSpec::Family::UniformCube: return -d * std::log(2.0 * p.halfWidth);
    case PositionSpec::Family::StandardLaplace: return -d * std::log(4.0);
  }
  return std::nullopt;
}

double log_sum_exp(const std::vector<double>& terms) {
  const double m = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - m);
  return m + std::log(acc);
}

std::optional<double> log_noise_moment(const NoiseSpec& q) {
  const std::size_t d = q.dimension;
  const double dr = dd(d);
  if (d == 2) {
    // E||dZ||^2 = 2 tr Cov(Z~) for every family.
    const auto v = q.direction_variances();
    return std::log(2.0 * std::accumulate(v.begin(), v.end(), 0.0));
  }
  switch (q.family) {
    case NoiseSpec::Family::IsotropicGaussian:
      // dZ ~ N(0, 2 I): ||dZ|| = sqrt(2) chi_d.
      return dr * std::log(2.0) + std::lgamma(dr) - std::lgamma(0.5 * dr);
    case NoiseSpec::Family::Rademacher: {
      // k ~ Bin(d, 1/2) coordinates differ, each by 2: ||dZ||^d = 2^d k^{d/2}.
      std::vector<double> terms;
      for (std::size_t k = 1; k <= d; ++k) {
        const double kr = dd(k);
        const double logChoose = std::lgamma(dr + 1.0) - std::lgamma(kr + 1.0) - std::lgamma(dr - kr + 1.0);
        terms.push_back(logChoose + 0.5 * dr * std::log(kr));
      }
      return log_sum_exp(terms);
    }
    case NoiseSpec::Family::SphereUniform: {
      if (d == 1) return 0.0;  // Z~ = +-1, E|dZ| = 1
      // ||dZ||^2 = 4(1 - u) with u ~ Beta(a, a), a = (d - 1)/2.
      const double a = 0.5 * (dr - 1.0);
      const double logB1 = std::lgamma(a + 0.5 * dr) + std::lgamma(a) - std::lgamma(2.0 * a + 0.5 * dr);
      const double logB0 = 2.0 * std::lgamma(a) - std::lgamma(2.0 * a);
      return dr * std::log(2.0) + logB1 - logB0;
    }
    case NoiseSpec::Family::UniformCube:
      if (d == 1) return std::log(2.0 * kUniformNoiseHalfWidth / 3.0);
      return std::nullopt;
    case NoiseSpec::Family::DiagonalSubGaussian:
      if (d == 1 && q.base == NoiseSpec::Base::Gaussian)
        return std::log(2.0 * std::sqrt(q.variances[0] / kPi));
      return std::nullopt;
  }
  return std::nullopt;
}

double log_tau_prefactor(std::size_t d) {
  return -dd(d) * std::log(2.0) + std::log(unit_ball_volume(d));
}

struct DensityKernel {
  const PositionSpec& position;
  void operator()(Rng& rng, std::uint64_t count, Moments& m) const {
    std::vector<double> x(position.dimension);
    for (std::uint64_t s = 0; s < count; ++s) {
      draw_position(position, rng, x);
      m.add(evaluate_density(position, x));
    }
  }
};

struct NoiseMomentKernel {
  const NoiseSpec& noise;
  void operator()(Rng& rng, std::uint64_t count, Moments& m) const {
    const std::size_t d = noise.dimension;
    std::vector<double> a(d), b(d);
    for (std::uint64_t s = 0; s < count; ++s) {
      draw_noise_direction(noise, rng, a);
      draw_noise_direction(noise, rng, b);
      double sq = 0.0;
      for (std::size_t k = 0; k < d; ++k) sq += (a[k] - b[k]) * (a[k] - b[k]);
      m.add(std::pow(sq, 0.5 * dd(d)));
    }
  }
};

// (1 2) is augmenting iff -sigma <dX, dZ~> >= ||dX||^2.
struct AugmentingKernel {
  const PositionSpec& position;
  const NoiseSpec& noise;
  double sigma;
  void operator()(Rng& rng, std::uint64_t count, Moments& m) const {
    const std::size_t d = position.dimension;
    std::vector<double> x1(d), x2(d), z1(d), z2(d);
    for (std::uint64_t s = 0; s < count; ++s) {
      draw_position(position, rng, x1);
      draw_position(position, rng, x2);
      draw_noise_direction(noise, rng, z1);
      draw_noise_direction(noise, rng, z2);
      double cross = 0.0, gap = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double dx = x1[k] - x2[k];
        cross += dx * (z1[k] - z2[k]);
        gap += dx * dx;
      }
      m.add(-sigma * cross >= gap ? 1.0 : 0.0);
    }
  }
};

}  // namespace

double minimax_lower_bound(double n, std::size_t d, double sigma, double gamma, double beta) {
  if (!(n >= 3.0)) throw DomainError("minimax lower bound requires n >= 3");
  check_gamma_beta(gamma, beta);
  check_sigma(sigma);
  return gamma * gamma / 32.0 * std::exp(-7.0 * beta * dd(d)) * capped(n, sigma, d);
}

double matching_size_lower_bound(double n, std::size_t d, double r, double Rd, double gamma,
                                 double beta) {
  if (!(n >= 3.0)) throw DomainError("matching size lower bound requires n >= 3");
  if (!(r > 0.0)) throw DomainError("matching size lower bound requires r > 0");
  if (!(Rd > 0.0)) throw DomainError("Rd must be positive");
  check_gamma_beta(gamma, beta);
  return gamma * gamma / 16.0 * std::exp(-6.0 * beta * dd(d)) * capped(n, r / Rd, d);
}

double lss_upper_bound(double n, std::size_t d, double sigma, double K) {
  if (!(K > 0.0)) throw DomainError("K must be positive");
  check_sigma(sigma);
  return std::min(3.0 * std::pow(K, dd(d)) * n * n * std::pow(sigma, dd(d)), n);
}

HpBounds hp_bounds(double n, std::size_t d, double sigma, double gamma, double beta) {
  check_gamma_beta(gamma, beta);
  check_sigma(sigma);
  if (!(n > 0.0)) throw DomainError("n must be positive");
  const double m = gamma * gamma * capped(n, sigma, d);
  const double e6 = std::exp(-6.0 * beta * dd(d));
  const double e7 = std::exp(-7.0 * beta * dd(d));
  return {m / 32.0 * e6, m / 64.0 * e7, m / 128.0 * e7};
}

double unit_ball_volume(std::size_t d) {
  const double h = 0.5 * dd(d);
  return std::exp(h * std::log(kPi) - std::lgamma(h + 1.0));
}

std::optional<double> expected_density_closed_form(const PositionSpec& position) {
  position.validate();
  if (auto l = log_density_mean(position)) return std::exp(*l);
  return std::nullopt;
}

std::optional<double> noise_moment_closed_form(const NoiseSpec& noise) {
  noise.validate();
  if (auto l = log_noise_moment(noise)) return std::exp(*l);
  return std::nullopt;
}

std::optional<double> tau_closed_form(const PositionSpec& position, const NoiseSpec& noise) {
  position.validate();
  noise.validate();
  if (position.dimension != noise.dimension) throw ConfigError("tau: dimension mismatch");
  const auto f = log_density_mean(position);
  const auto m = log_noise_moment(noise);
  if (!f || !m) return std::nullopt;
  return std::exp(log_tau_prefactor(position.dimension) + *f + *m);
}

TauEstimate tau_constant(const PositionSpec& position, const NoiseSpec& noise,
                         std::uint64_t mcSamples, std::uint64_t seed, int threads) {
  position.validate();
  noise.validate();
  if (position.dimension != noise.dimension) throw ConfigError("tau: dimension mismatch");
  if (mcSamples == 0) throw ConfigError("tau: mcSamples must be >= 1");
  TauEstimate out;
  out.densityMean =
      block_moments(mcSamples, derive_seed(seed, 0), threads, DensityKernel{position}).estimate();
  out.noiseMoment =
      block_moments(mcSamples, derive_seed(seed, 1), threads, NoiseMomentKernel{noise}).estimate();
  const double pref = std::exp(log_tau_prefactor(position.dimension));
  const double f = out.densityMean.value, m = out.noiseMoment.value;
  out.tau.value = pref * f * m;
  out.tau.samples = mcSamples;
  if (f > 0.0 && m > 0.0) {
    const double rf = out.densityMean.stdError / f, rm = out.noiseMoment.stdError / m;
    out.tau.stdError = out.tau.value * std::sqrt(rf * rf + rm * rm);
  } else {
    out.tau.degenerate = true;
  }
  return out;
}

McEstimate augmenting_2cycle_rate(const PositionSpec& position, const NoiseSpec& noise,
                                  double sigma, std::uint64_t mcSamples, std::uint64_t seed,
                                  int threads) {
  position.validate();
  noise.validate();
  check_sigma(sigma);
  if (position.dimension != noise.dimension) throw ConfigError("rate: dimension mismatch");
  if (mcSamples == 0) throw ConfigError("rate: mcSamples must be >= 1");
  if (sigma == 0.0) return {0.0, 0.0, mcSamples, true};
  const Moments m =
      block_moments(mcSamples, seed, threads, AugmentingKernel{position, noise, sigma});
  const double p = m.mean();
  const double scale = std::pow(sigma, dd(position.dimension));
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(m.count));
  return {p / scale, se / scale, m.count, false};
}

void HDParams::validate() const {
  if (sigmaX2.empty() || sigmaX2.size() != sigmaZ2.size())
    throw DomainError("HDParams: diagonals must be nonempty and of equal length");
  for (double v : sigmaX2)
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("HDParams: sigmaX2 entries must be positive");
  for (double v : sigmaZ2)
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("HDParams: sigmaZ2 entries must be positive");
  if (!(KX > 0.0) || !(KZ > 0.0)) throw DomainError("HDParams: KX and KZ must be positive");
  if (!(n > 1.0)) throw DomainError("HDParams: n must exceed 1");
}

double snr_lss(const HDParams& p) {
  p.validate();
  const double total = std::accumulate(p.sigmaX2.begin(), p.sigmaX2.end(), 0.0);
  double mean = 0.0;
  for (std::size_t j = 0; j < p.sigmaX2.size(); ++j) mean += p.sigmaX2[j] / total * p.sigmaZ2[j];
  return total / mean / std::log(p.n);
}

double snr_lssc(const HDParams& p) {
  p.validate();
  const double total = std::accumulate(p.sigmaX2.begin(), p.sigmaX2.end(), 0.0);
  double inv = 0.0;
  for (std::size_t j = 0; j < p.sigmaX2.size(); ++j) inv += p.sigmaX2[j] / total / p.sigmaZ2[j];
  return total * inv / std::log(p.n);
}

StableRanks stable_ranks(const HDParams& p) {
  p.validate();
  auto rank = [&](auto entry) {
    double sum = 0.0, mx = 0.0;
    for (std::size_t j = 0; j < p.sigmaX2.size(); ++j) {
      const double v = entry(j);
      sum += v;
      mx = std::max(mx, v);
    }
    return sum / mx;
  };
  return {rank([&](std::size_t j) { return p.sigmaZ2[j] * p.sigmaX2[j]; }),
          rank([&](std::size_t j) { return p.sigmaX2[j]; }),
          rank([&](std::size_t j) { return p.sigmaX2[j] / p.sigmaZ2[j]; })};
}

double gaussian_q(double s) {
  // 1 - Phi(s / sqrt 2) = erfc(s / 2) / 2.
  return 0.5 * std::erfc(0.5 * s);
}

double gaussian_tv_lower(double vNormSq) {
  if (!(vNormSq >= 0.0)) throw DomainError("gaussian_tv_lower: argument must be >= 0");
  return 0.5 * std::exp(-vNormSq);
}

double chi2_rate(double t) {
  if (!(t > 0.0)) throw DomainError("chi-square rate function requires t > 0");
  return 0.5 * (t - 1.0 - std::log(t));
}

double LogRegime::objective(double g) const {
  if (!(g > 0.0)) throw DomainError("log-regime objective requires gamma > 0");
  return 2.0 - 0.5 * a * (0.5 * g * (1.0 + 1.0 / sigma2) - 1.0 - std::log(0.5 * g));
}

LogRegime log_regime(double a, double sigma2) {
  if (!(a > 0.0)) throw DomainError("log regime requires a > 0");
  if (!(sigma2 > 0.0)) throw DomainError("log regime requires sigma2 > 0");
  LogRegime r;
  r.a = a;
  r.sigma2 = sigma2;
  r.gammaStar = 2.0 / (1.0 + 1.0 / sigma2);
  r.alpha = 2.0 - 0.5 * a * std::log1p(1.0 / sigma2);
  return r;
}

std::string TheoryReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["value"] = value;
  auto& in = j["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : inputs) in[k] = v;
  if (!components.empty()) {
    auto& c = j["components"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : components) c[k] = v;
  }
  j["formulaRef"] = formulaRef;
  return j.dump();
}

}  // namespace pmlab
