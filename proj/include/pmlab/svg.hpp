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
#include <vector>

namespace pmlab {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct PlotOptions {
  std::string title;
  std::string xLabel;
  std::string yLabel;
  bool logX = true;
  bool logY = true;
};

/// Self-contained SVG line chart with axes, decade ticks and a legend.
/// Points that cannot be placed on a log axis (<= 0, non-finite) are dropped.
std::string render_line_chart(const std::vector<PlotSeries>& series, const PlotOptions& options);

}  // namespace pmlab
