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

#include "pmlab/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>

#include "json.hpp"
#include "pmlab/rng.hpp"
#include "pmlab/serialize.hpp"

namespace pmlab {

double norm(std::span<const double> x, NormKind kind) {
  double acc = 0.0;
  switch (kind) {
    case NormKind::L1:
      for (double v : x) acc += std::abs(v);
      return acc;
    case NormKind::L2:
      for (double v : x) acc += v * v;
      return std::sqrt(acc);
    case NormKind::Linf:
      for (double v : x) acc = std::max(acc, std::abs(v));
      return acc;
  }
  return acc;
}

double norm_distance(std::span<const double> a, std::span<const double> b, NormKind kind) {
  double acc = 0.0;
  switch (kind) {
    case NormKind::L1:
      for (std::size_t k = 0; k < a.size(); ++k) acc += std::abs(a[k] - b[k]);
      return acc;
    case NormKind::L2:
      for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
      return std::sqrt(acc);
    case NormKind::Linf:
      for (std::size_t k = 0; k < a.size(); ++k) acc = std::max(acc, std::abs(a[k] - b[k]));
      return acc;
  }
  return acc;
}

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::Linf: return "linf";
  }
  return "?";
}

NormKind parse_norm(std::string_view name) {
  if (name == "l1") return NormKind::L1;
  if (name == "l2") return NormKind::L2;
  if (name == "linf") return NormKind::Linf;
  throw ConfigError("unknown norm '" + std::string(name) + "' (expected l1, l2 or linf)");
}

// --- PositionSpec ---------------------------------------------------------

PositionSpec PositionSpec::isotropic_gaussian(std::size_t d) {
  return {Family::IsotropicGaussian, d, {}, 1.0};
}

PositionSpec PositionSpec::diagonal_gaussian(std::vector<double> variances) {
  const std::size_t d = variances.size();
  return {Family::DiagonalGaussian, d, std::move(variances), 1.0};
}

PositionSpec PositionSpec::uniform_cube(std::size_t d, double halfWidth) {
  return {Family::UniformCube, d, {}, halfWidth};
}

PositionSpec PositionSpec::standard_laplace(std::size_t d) {
  return {Family::StandardLaplace, d, {}, 1.0};
}

void PositionSpec::validate() const {
  if (dimension == 0) throw ConfigError("position dimension must be positive");
  if (family == Family::DiagonalGaussian) {
    if (variances.size() != dimension) throw ConfigError("position variances must have d entries");
    for (double v : variances)
      if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("position variances must be positive");
  }
  if (family == Family::UniformCube && !(halfWidth > 0.0 && std::isfinite(halfWidth)))
    throw ConfigError("uniform half-width must be positive");
}

std::string PositionSpec::label() const {
  switch (family) {
    case Family::IsotropicGaussian: return "gaussian";
    case Family::DiagonalGaussian: return "diag-gaussian";
    case Family::UniformCube: return "uniform";
    case Family::StandardLaplace: return "laplace";
  }
  return "?";
}

PositionSpec parse_position(std::string_view name, std::size_t d) {
  if (name == "gaussian") return PositionSpec::isotropic_gaussian(d);
  if (name == "uniform") return PositionSpec::uniform_cube(d, 1.0);
  if (name == "laplace") return PositionSpec::standard_laplace(d);
  if (name == "diag-gaussian") return PositionSpec::diagonal_gaussian(std::vector<double>(d, 1.0));
  throw ConfigError("unknown position family '" + std::string(name) +
                    "' (expected gaussian, diag-gaussian, uniform or laplace)");
}

// --- NoiseSpec ------------------------------------------------------------

NoiseSpec NoiseSpec::isotropic_gaussian(std::size_t d, double sigma) {
  return {Family::IsotropicGaussian, d, sigma, {}, Base::Gaussian};
}
NoiseSpec NoiseSpec::sphere_uniform(std::size_t d, double sigma) {
  return {Family::SphereUniform, d, sigma, {}, Base::Gaussian};
}
NoiseSpec NoiseSpec::uniform_cube(std::size_t d, double sigma) {
  return {Family::UniformCube, d, sigma, {}, Base::Gaussian};
}
NoiseSpec NoiseSpec::rademacher(std::size_t d, double sigma) {
  return {Family::Rademacher, d, sigma, {}, Base::Gaussian};
}
NoiseSpec NoiseSpec::diagonal(std::vector<double> variances, Base base, double sigma) {
  const std::size_t d = variances.size();
  return {Family::DiagonalSubGaussian, d, sigma, std::move(variances), base};
}

void NoiseSpec::validate() const {
  if (dimension == 0) throw ConfigError("noise dimension must be positive");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ConfigError("noise level sigma must be >= 0");
  if (family == Family::DiagonalSubGaussian) {
    if (variances.size() != dimension) throw ConfigError("noise variances must have d entries");
    for (double v : variances)
      if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("noise variances must be positive");
  }
}

std::string NoiseSpec::label() const {
  switch (family) {
    case Family::IsotropicGaussian: return "gaussian";
    case Family::SphereUniform: return "sphere";
    case Family::UniformCube: return "uniform";
    case Family::Rademacher: return "rademacher";
    case Family::DiagonalSubGaussian:
      switch (base) {
        case Base::Gaussian: return "diag-gaussian";
        case Base::Rademacher: return "diag-rademacher";
        case Base::Uniform: return "diag-uniform";
      }
  }
  return "?";
}

std::vector<double> NoiseSpec::direction_variances() const {
  switch (family) {
    case Family::SphereUniform:
      return std::vector<double>(dimension, 1.0 / static_cast<double>(dimension));
    case Family::DiagonalSubGaussian: return variances;
    default: return std::vector<double>(dimension, 1.0);
  }
}

NoiseSpec parse_noise(std::string_view name, std::size_t d, double sigma) {
  if (name == "gaussian") return NoiseSpec::isotropic_gaussian(d, sigma);
  if (name == "sphere") return NoiseSpec::sphere_uniform(d, sigma);
  if (name == "uniform") return NoiseSpec::uniform_cube(d, sigma);
  if (name == "rademacher") return NoiseSpec::rademacher(d, sigma);
  throw ConfigError("unknown noise family '" + std::string(name) +
                    "' (expected gaussian, sphere, uniform or rademacher)");
}

// --- sampling -------------------------------------------------------------

namespace {

double laplace_draw(Rng& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::bernoulli_distribution sign(0.5);
  const double e = exp1(rng);
  return sign(rng) ? e : -e;
}

double base_draw(NoiseSpec::Base base, Rng& rng) {
  switch (base) {
    case NoiseSpec::Base::Gaussian: return std::normal_distribution<double>(0.0, 1.0)(rng);
    case NoiseSpec::Base::Rademacher: return std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
    case NoiseSpec::Base::Uniform:
      return std::uniform_real_distribution<double>(-kUniformNoiseHalfWidth,
                                                    kUniformNoiseHalfWidth)(rng);
  }
  return 0.0;
}

}  // namespace

void draw_position(const PositionSpec& position, Rng& rng, std::span<double> out) {
  switch (position.family) {
    case PositionSpec::Family::IsotropicGaussian: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (auto& v : out) v = normal(rng);
      break;
    }
    case PositionSpec::Family::DiagonalGaussian: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = std::sqrt(position.variances[k]) * normal(rng);
      break;
    }
    case PositionSpec::Family::UniformCube: {
      std::uniform_real_distribution<double> unif(-position.halfWidth, position.halfWidth);
      for (auto& v : out) v = unif(rng);
      break;
    }
    case PositionSpec::Family::StandardLaplace:
      for (auto& v : out) v = laplace_draw(rng);
      break;
  }
}

void draw_noise_direction(const NoiseSpec& noise, Rng& rng, std::span<double> out) {
  switch (noise.family) {
    case NoiseSpec::Family::IsotropicGaussian: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (auto& v : out) v = normal(rng);
      break;
    }
    case NoiseSpec::Family::SphereUniform: {
      std::normal_distribution<double> normal(0.0, 1.0);
      double len = 0.0;
      while (len == 0.0) {
        double sq = 0.0;
        for (auto& v : out) {
          v = normal(rng);
          sq += v * v;
        }
        len = std::sqrt(sq);
      }
      for (auto& v : out) v /= len;
      break;
    }
    case NoiseSpec::Family::UniformCube: {
      std::uniform_real_distribution<double> unif(-kUniformNoiseHalfWidth, kUniformNoiseHalfWidth);
      for (auto& v : out) v = unif(rng);
      break;
    }
    case NoiseSpec::Family::Rademacher: {
      std::bernoulli_distribution coin(0.5);
      for (auto& v : out) v = coin(rng) ? 1.0 : -1.0;
      break;
    }
    case NoiseSpec::Family::DiagonalSubGaussian:
      for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = std::sqrt(noise.variances[k]) * base_draw(noise.base, rng);
      break;
  }
}

Matrix sample_positions(const PositionSpec& position, std::size_t count, std::uint64_t seed) {
  position.validate();
  Matrix out(count, position.dimension);
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) draw_position(position, rng, out.row(i));
  return out;
}

Matrix sample_noise_direction(const NoiseSpec& noise, std::size_t count, std::uint64_t seed) {
  noise.validate();
  Matrix out(count, noise.dimension);
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) draw_noise_direction(noise, rng, out.row(i));
  return out;
}

Permutation sample_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = i;
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(map[i - 1], map[pick(rng)]);
  }
  return Permutation(std::move(map));
}

Instance sample_instance(const PositionSpec& position, const NoiseSpec& noise, std::size_t n,
                         std::uint64_t seed) {
  position.validate();
  noise.validate();
  if (n == 0) throw ConfigError("sample_instance: n must be positive");
  if (position.dimension != noise.dimension)
    throw ConfigError("sample_instance: position and noise dimensions differ");
  const std::size_t d = position.dimension;

  Instance inst;
  inst.n = n;
  inst.d = d;
  inst.positionSpec = position;
  inst.noiseSpec = noise;
  inst.seed = seed;
  inst.X = sample_positions(position, n, derive_seed(seed, 0));
  const Matrix Z = sample_noise_direction(noise, n, derive_seed(seed, 1));
  inst.pistar = sample_permutation(n, derive_seed(seed, 2));
  inst.Y = Matrix(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = inst.X.row(inst.pistar[i]);
    for (std::size_t k = 0; k < d; ++k) inst.Y(i, k) = x[k] + noise.sigma * Z(i, k);
  }
  return inst;
}

Instance make_instance(Matrix X, Matrix Y, Permutation pistar) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols() || pistar.size() != X.rows())
    throw InputError("make_instance: shape mismatch");
  Instance inst;
  inst.n = X.rows();
  inst.d = X.cols();
  inst.positionSpec.dimension = inst.d;
  inst.noiseSpec.dimension = inst.d;
  inst.X = std::move(X);
  inst.Y = std::move(Y);
  inst.pistar = std::move(pistar);
  return inst;
}

double evaluate_density(const PositionSpec& position, std::span<const double> x) {
  position.validate();
  if (x.size() != position.dimension) throw InputError("evaluate_density: dimension mismatch");
  const double d = static_cast<double>(position.dimension);
  switch (position.family) {
    case PositionSpec::Family::IsotropicGaussian: {
      double sq = 0.0;
      for (double v : x) sq += v * v;
      return std::exp(-0.5 * sq) * std::pow(2.0 * std::numbers::pi, -0.5 * d);
    }
    case PositionSpec::Family::DiagonalGaussian: {
      double logf = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) {
        const double var = position.variances[k];
        logf += -0.5 * x[k] * x[k] / var - 0.5 * std::log(2.0 * std::numbers::pi * var);
      }
      return std::exp(logf);
    }
    case PositionSpec::Family::UniformCube: {
      for (double v : x)
        if (std::abs(v) > position.halfWidth) return 0.0;
      return std::pow(2.0 * position.halfWidth, -d);
    }
    case PositionSpec::Family::StandardLaplace: {
      double l1 = 0.0;
      for (double v : x) l1 += std::abs(v);
      return std::exp(-l1) * std::pow(0.5, d);
    }
  }
  return 0.0;
}

// --- serialization --------------------------------------------------------

std::string instance_to_json(const Instance& instance) {
  nlohmann::ordered_json j;
  j["n"] = instance.n;
  j["d"] = instance.d;
  j["seed"] = instance.seed;
  j["position"] = to_json(instance.positionSpec);
  j["noise"] = to_json(instance.noiseSpec);
  return j.dump(2) + "\n";
}

Instance instance_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("instance JSON: ") + e.what());
  }
  try {
    const auto pos = position_from_json(j.at("position"));
    const auto noise = noise_from_json(j.at("noise"));
    return sample_instance(pos, noise, j.at("n").get<std::size_t>(),
                           j.at("seed").get<std::uint64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("instance JSON: ") + e.what());
  }
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char buf[8];
  for (int b = 0; b < 8; ++b) buf[b] = static_cast<unsigned char>(v >> (8 * b));
  out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), 8)) throw InputError("instance binary: truncated");
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(buf[b]) << (8 * b);
  return v;
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void write_instance_binary(std::ostream& out, const Instance& instance) {
  put_u64(out, instance.n);
  put_u64(out, instance.d);
  for (double v : instance.X.data()) put_f64(out, v);
  for (double v : instance.Y.data()) put_f64(out, v);
  for (std::size_t j = 0; j < instance.pistar.size(); ++j) put_u64(out, instance.pistar[j]);
}

Instance read_instance_binary(std::istream& in) {
  const std::uint64_t n = get_u64(in);
  const std::uint64_t d = get_u64(in);
  if (n == 0 || d == 0 || n > (1u << 24) || d > (1u << 24))
    throw InputError("instance binary: implausible header");
  Matrix X(n, d), Y(n, d);
  for (double& v : X.data()) v = get_f64(in);
  for (double& v : Y.data()) v = get_f64(in);
  std::vector<std::size_t> map(n);
  for (auto& v : map) v = get_u64(in);
  return make_instance(std::move(X), std::move(Y), Permutation(std::move(map)));
}

}  // namespace pmlab
