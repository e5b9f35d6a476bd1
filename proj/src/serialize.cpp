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

#include "pmlab/serialize.hpp"

#include <charconv>
#include <cmath>

namespace pmlab {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

nlohmann::ordered_json to_json(const PositionSpec& spec) {
  nlohmann::ordered_json j;
  j["family"] = spec.label();
  j["d"] = spec.dimension;
  if (spec.family == PositionSpec::Family::DiagonalGaussian) j["variances"] = spec.variances;
  if (spec.family == PositionSpec::Family::UniformCube) j["half_width"] = spec.halfWidth;
  return j;
}

nlohmann::ordered_json to_json(const NoiseSpec& spec) {
  nlohmann::ordered_json j;
  j["family"] = spec.label();
  j["d"] = spec.dimension;
  j["sigma"] = spec.sigma;
  if (spec.family == NoiseSpec::Family::DiagonalSubGaussian) j["variances"] = spec.variances;
  return j;
}

PositionSpec position_from_json(const nlohmann::json& j) {
  const auto family = j.at("family").get<std::string>();
  const auto d = j.at("d").get<std::size_t>();
  PositionSpec spec = parse_position(family, d);
  if (spec.family == PositionSpec::Family::DiagonalGaussian)
    spec.variances = j.at("variances").get<std::vector<double>>();
  if (spec.family == PositionSpec::Family::UniformCube)
    spec.halfWidth = j.value("half_width", 1.0);
  spec.validate();
  return spec;
}

NoiseSpec noise_from_json(const nlohmann::json& j) {
  const auto family = j.at("family").get<std::string>();
  const auto d = j.at("d").get<std::size_t>();
  const auto sigma = j.at("sigma").get<double>();
  NoiseSpec spec;
  if (family.rfind("diag-", 0) == 0) {
    const auto base = family.substr(5);
    NoiseSpec::Base b = NoiseSpec::Base::Gaussian;
    if (base == "rademacher") b = NoiseSpec::Base::Rademacher;
    else if (base == "uniform") b = NoiseSpec::Base::Uniform;
    else if (base != "gaussian") throw ConfigError("unknown diagonal noise base '" + base + "'");
    spec = NoiseSpec::diagonal(j.at("variances").get<std::vector<double>>(), b, sigma);
  } else {
    spec = parse_noise(family, d, sigma);
  }
  spec.validate();
  return spec;
}

}  // namespace pmlab
