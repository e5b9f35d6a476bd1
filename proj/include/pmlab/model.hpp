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
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pmlab/rng.hpp"
#include "pmlab/types.hpp"

namespace pmlab {

enum class NormKind { L1, L2, Linf };

double norm(std::span<const double> x, NormKind kind);
double norm_distance(std::span<const double> a, std::span<const double> b, NormKind kind);
std::string to_string(NormKind kind);
/// "l1", "l2", "linf". Throws ConfigError otherwise.
NormKind parse_norm(std::string_view name);

/// Law P of the initial positions X_i.
struct PositionSpec {
  enum class Family { IsotropicGaussian, DiagonalGaussian, UniformCube, StandardLaplace };

  Family family = Family::IsotropicGaussian;
  std::size_t dimension = 1;
  std::vector<double> variances;  // DiagonalGaussian only
  double halfWidth = 1.0;         // UniformCube only

  static PositionSpec isotropic_gaussian(std::size_t d);
  static PositionSpec diagonal_gaussian(std::vector<double> variances);
  static PositionSpec uniform_cube(std::size_t d, double halfWidth);
  static PositionSpec standard_laplace(std::size_t d);

  /// Throws ConfigError on non-positive variances, half-width or dimension.
  void validate() const;
  /// Short label used in CSV output and CLI flags.
  std::string label() const;

  friend bool operator==(const PositionSpec&, const PositionSpec&) = default;
};

/// Law Q of the unscaled noise directions Z~_i, plus the noise level sigma.
///
/// Coordinates have unit variance for IsotropicGaussian, UniformCube
/// (half-width sqrt(3)) and Rademacher. SphereUniform has per-coordinate
/// variance 1/d. DiagonalSubGaussian draws a unit-variance base coordinate
/// and scales coordinate j by sqrt(variances[j]).
struct NoiseSpec {
  enum class Family { IsotropicGaussian, SphereUniform, UniformCube, Rademacher, DiagonalSubGaussian };
  enum class Base { Gaussian, Rademacher, Uniform };

  Family family = Family::IsotropicGaussian;
  std::size_t dimension = 1;
  double sigma = 0.0;
  std::vector<double> variances;  // DiagonalSubGaussian only
  Base base = Base::Gaussian;     // DiagonalSubGaussian only

  static NoiseSpec isotropic_gaussian(std::size_t d, double sigma);
  static NoiseSpec sphere_uniform(std::size_t d, double sigma);
  static NoiseSpec uniform_cube(std::size_t d, double sigma);
  static NoiseSpec rademacher(std::size_t d, double sigma);
  static NoiseSpec diagonal(std::vector<double> variances, Base base, double sigma);

  void validate() const;
  std::string label() const;
  NoiseSpec with_sigma(double s) const {
    NoiseSpec copy = *this;
    copy.sigma = s;
    return copy;
  }
  /// Per-coordinate variance of Z~ (before sigma scaling).
  std::vector<double> direction_variances() const;

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

inline constexpr double kUniformNoiseHalfWidth = 1.7320508075688772;  // sqrt(3)

/// Parse CLI family names ("gaussian", "diag-gaussian", "uniform", "laplace").
PositionSpec parse_position(std::string_view name, std::size_t d);
/// "gaussian", "sphere", "uniform", "rademacher".
NoiseSpec parse_noise(std::string_view name, std::size_t d, double sigma);

/// One draw of the planted matching model: Y_i = X_{pistar(i)} + sigma * Z~_i.
struct Instance {
  std::size_t n = 0;
  std::size_t d = 0;
  Matrix X;
  Matrix Y;
  Permutation pistar;
  PositionSpec positionSpec;
  NoiseSpec noiseSpec;
  std::uint64_t seed = 0;
};

/// Deterministic in (specs, n, seed). Positions, noise and the permutation
/// use the sub-streams derive_seed(seed, 0), (seed, 1) and (seed, 2).
Instance sample_instance(const PositionSpec& position, const NoiseSpec& noise, std::size_t n,
                         std::uint64_t seed);

/// Builds an Instance from explicit data (tests and hand-built fixtures).
Instance make_instance(Matrix X, Matrix Y, Permutation pistar);

Matrix sample_positions(const PositionSpec& position, std::size_t count, std::uint64_t seed);
/// Unscaled directions Z~ (sigma is not applied).
Matrix sample_noise_direction(const NoiseSpec& noise, std::size_t count, std::uint64_t seed);

/// Single draws into `out` (size d); specs are assumed validated.
void draw_position(const PositionSpec& position, Rng& rng, std::span<double> out);
void draw_noise_direction(const NoiseSpec& noise, Rng& rng, std::span<double> out);

double evaluate_density(const PositionSpec& position, std::span<const double> x);

/// Uniform random permutation (Fisher-Yates).
Permutation sample_permutation(std::size_t n, std::uint64_t seed);

// Serialization. The JSON document stores only (specs, n, seed); reading it
// regenerates the instance. The binary layout is little-endian:
//   u64 n, u64 d, n*d f64 X (row-major), n*d f64 Y, n u64 pistar.
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(std::string_view text);
void write_instance_binary(std::ostream& out, const Instance& instance);
/// Reads X, Y and pistar; the specs are left at their defaults.
Instance read_instance_binary(std::istream& in);

}  // namespace pmlab
