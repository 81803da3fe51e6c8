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


#pragma once

#include <string>
#include <vector>

namespace spinbath {

struct LineSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Static line plot with axes, ticks and a legend.
std::string svg_line_plot(const std::vector<LineSeries>& series, const std::string& title, const std::string& x_label,
                          const std::string& y_label);

// Heat map of values[row][col] on the given axes (NaN cells drawn black).
std::string svg_heatmap(const std::vector<double>& x_axis, const std::vector<double>& y_axis,
                        const std::vector<std::vector<double>>& values, const std::string& title,
                        const std::string& x_label, const std::string& y_label);

}  // namespace spinbath
