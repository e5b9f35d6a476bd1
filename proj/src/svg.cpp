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

#include "pmlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace pmlab {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 200, kTop = 40, kBottom = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v, bool log) {
  char buf[32];
  if (log) std::snprintf(buf, sizeof buf, "1e%d", static_cast<int>(std::lround(v)));
  else std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Axis {
  bool log;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  bool accepts(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
  double map(double v) const { return log ? std::log10(v) : v; }
  void include(double v) {
    const double t = map(v);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  void finish() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (log) {
      lo = std::floor(lo);
      hi = std::ceil(hi);
    }
    if (hi - lo < 1e-12) hi = lo + 1.0;
  }
  std::vector<double> ticks() const {
    std::vector<double> t;
    if (log) {
      for (double v = lo; v <= hi + 1e-9; v += 1.0) t.push_back(v);
    } else {
      for (int k = 0; k <= 5; ++k) t.push_back(lo + (hi - lo) * k / 5.0);
    }
    return t;
  }
};

}  // namespace

std::string render_line_chart(const std::vector<PlotSeries>& series, const PlotOptions& opt) {
  Axis ax{opt.logX}, ay{opt.logY};
  for (const auto& s : series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
      if (ax.accepts(s.x[i]) && ay.accepts(s.y[i])) {
        ax.include(s.x[i]);
        ay.include(s.y[i]);
      }
  ax.finish();
  ay.finish();

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (ax.map(v) - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto py = [&](double v) { return kTop + ph - (ay.map(v) - ay.lo) / (ay.hi - ay.lo) * ph; };
  auto tx = [&](double t) { return kLeft + (t - ax.lo) / (ax.hi - ax.lo) * pw; };
  auto ty = [&](double t) { return kTop + ph - (t - ay.lo) / (ay.hi - ay.lo) * ph; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
    << escape(opt.title) << "</text>\n";

  for (double t : ax.ticks()) {
    o << "<line x1=\"" << num(tx(t)) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(tx(t))
      << "\" y2=\"" << num(kTop + ph) << "\" stroke=\"#e0e0e0\"/>\n"
      << "<text x=\"" << num(tx(t)) << "\" y=\"" << num(kTop + ph + 18)
      << "\" text-anchor=\"middle\">" << tick_label(t, ax.log) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(ty(t)) << "\" x2=\"" << num(kLeft + pw)
      << "\" y2=\"" << num(ty(t)) << "\" stroke=\"#e0e0e0\"/>\n"
      << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(ty(t) + 4)
      << "\" text-anchor=\"end\">" << tick_label(t, ay.log) << "</text>\n";
  }
  o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
    << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n"
    << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 16)
    << "\" text-anchor=\"middle\">" << escape(opt.xLabel) << "</text>\n"
    << "<text transform=\"translate(20," << num(kTop + ph / 2)
    << ") rotate(-90)\" text-anchor=\"middle\">" << escape(opt.yLabel) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\""
      << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
    bool first = true;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!ax.accepts(s.x[i]) || !ay.accepts(s.y[i])) continue;
      o << (first ? "" : " ") << num(px(s.x[i])) << ',' << num(py(s.y[i]));
      first = false;
    }
    o << "\"/>\n";
    const double ly = kTop + 14 + 20.0 * static_cast<double>(k);
    const double lx = kLeft + pw + 14;
    o << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 28)
      << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\""
      << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n"
      << "<text x=\"" << num(lx + 34) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.name)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace pmlab
