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

#include <string>

#include "json.hpp"
#include "pmlab/model.hpp"

namespace pmlab {

/// Shortest round-trip decimal representation; "nan", "inf", "-inf" for
/// non-finite values.
std::string format_double(double v);

nlohmann::ordered_json to_json(const PositionSpec& spec);
nlohmann::ordered_json to_json(const NoiseSpec& spec);
PositionSpec position_from_json(const nlohmann::json& j);
NoiseSpec noise_from_json(const nlohmann::json& j);

}  // namespace pmlab
