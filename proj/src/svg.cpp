// Copyright 2026 The Spinbath Authors
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


#include "spinbath/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "spinbath/csv.hpp"

namespace spinbath {

namespace {

constexpr double kWidth = 640, kHeight = 420, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2"};

std::string num(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void finish() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi <= lo) hi = lo + 1.0;
  }
};

void frame(std::ostringstream& os, const Range& xr, const Range& yr, const std::string& title,
           const std::string& x_label, const std::string& y_label) {
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = kLeft + pw * i / 4.0, fy = kTop + ph * (1.0 - i / 4.0);
    os << "<text x=\"" << fx << "\" y=\"" << kTop + ph + 16 << "\" font-size=\"11\" text-anchor=\"middle\">"
       << num(xr.lo + (xr.hi - xr.lo) * i / 4.0) << "</text>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << fy + 4 << "\" font-size=\"11\" text-anchor=\"end\">"
       << num(yr.lo + (yr.hi - yr.lo) * i / 4.0) << "</text>\n";
  }
  os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" font-size=\"14\" text-anchor=\"middle\">" << escape(title)
     << "</text>\n";
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10 << "\" font-size=\"12\" text-anchor=\"middle\">"
     << escape(x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << kTop + ph / 2 << ")\">" << escape(y_label) << "</text>\n";
}

}  // namespace

std::string svg_line_plot(const std::vector<LineSeries>& series, const std::string& title, const std::string& x_label,
                          const std::string& y_label) {
  Range xr, yr;
  for (const auto& s : series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.finish();
  yr.finish();
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  frame(os, xr, yr, title, x_label, y_label);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    os << "<polyline fill=\"none\" stroke-width=\"1.2\" stroke=\"" << kPalette[i % 7] << "\" points=\"";
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      if (!std::isfinite(s.y[k])) continue;
      os << num(kLeft + pw * (s.x[k] - xr.lo) / (xr.hi - xr.lo)) << ','
         << num(kTop + ph * (1.0 - (s.y[k] - yr.lo) / (yr.hi - yr.lo))) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << kWidth - kRight - 4 << "\" y=\"" << kTop + 14 + 14 * i << "\" font-size=\"11\" fill=\""
       << kPalette[i % 7] << "\" text-anchor=\"end\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_heatmap(const std::vector<double>& x_axis, const std::vector<double>& y_axis,
                        const std::vector<std::vector<double>>& values, const std::string& title,
                        const std::string& x_label, const std::string& y_label) {
  Range xr, yr, vr;
  for (double v : x_axis) xr.add(v);
  for (double v : y_axis) yr.add(v);
  for (const auto& row : values)
    for (double v : row) vr.add(v);
  xr.finish();
  yr.finish();
  vr.finish();
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const double cw = pw / std::max<std::size_t>(1, x_axis.size()), ch = ph / std::max<std::size_t>(1, y_axis.size());
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  for (std::size_t r = 0; r < y_axis.size() && r < values.size(); ++r)
    for (std::size_t c = 0; c < x_axis.size() && c < values[r].size(); ++c) {
      const double v = values[r][c];
      std::string fill = "#000000";
      if (std::isfinite(v)) {
        const double f = std::clamp((v - vr.lo) / (vr.hi - vr.lo), 0.0, 1.0);
        const int red = static_cast<int>(255 * f), blue = static_cast<int>(255 * (1.0 - f));
        std::ostringstream col;
        col << "rgb(" << red << ",64," << blue << ")";
        fill = col.str();
      }
      os << "<rect x=\"" << num(kLeft + cw * c) << "\" y=\"" << num(kTop + ph - ch * (r + 1)) << "\" width=\""
         << num(cw) << "\" height=\"" << num(ch) << "\" fill=\"" << fill << "\"/>\n";
    }
  // Axis labels refer to cell centers; the frame spans the full grid.
  Range xa = xr, ya = yr;
  frame(os, xa, ya, title + " [" + num(vr.lo) + " .. " + num(vr.hi) + "]", x_label, y_label);
  os << "</svg>\n";
  return os.str();
}

}  // namespace spinbath
