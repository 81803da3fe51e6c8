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


#include "spinbath/sweep.hpp"

#include <algorithm>

#include "spinbath/csv.hpp"

namespace spinbath {

namespace {

std::vector<double> distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::size_t index_of(const std::vector<double>& axis, double v) {
  return static_cast<std::size_t>(std::lower_bound(axis.begin(), axis.end(), v) - axis.begin());
}

}  // namespace

std::size_t SweepResult::missing() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const auto& c) { return !c; }));
}

const std::optional<SweepPoint>& SweepResult::at(std::size_t i_theta, std::size_t i_phi, std::size_t i_b) const {
  return cells.at((i_theta * phis.size() + i_phi) * amplitudes.size() + i_b);
}

SweepResult assemble_sweep(const std::vector<SweepPoint>& points) {
  SweepResult s;
  std::vector<double> th, ph, bb;
  for (const auto& p : points) {
    th.push_back(p.field.theta());
    ph.push_back(p.field.phi());
    bb.push_back(p.field.amplitude());
  }
  s.thetas = distinct(th);
  s.phis = distinct(ph);
  s.amplitudes = distinct(bb);
  s.cells.assign(s.thetas.size() * s.phis.size() * s.amplitudes.size(), std::nullopt);
  for (const auto& p : points) {
    const std::size_t idx =
        (index_of(s.thetas, p.field.theta()) * s.phis.size() + index_of(s.phis, p.field.phi())) * s.amplitudes.size() +
        index_of(s.amplitudes, p.field.amplitude());
    if (s.cells[idx])
      throw AggregationError("sweep: duplicate grid point (theta=" + format_double(p.field.theta()) +
                             ", phi=" + format_double(p.field.phi()) + ", B=" + format_double(p.field.amplitude()) +
                             ")");
    s.cells[idx] = p;
  }
  return s;
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  CsvWriter w(out, {"theta_rad", "phi_rad", "B_T", "T_s", "valid"});
  for (const auto& c : sweep.cells) {
    if (!c) continue;
    w << c->field.theta() << c->field.phi() << c->field.amplitude() << c->estimate.t_s
      << (c->estimate.valid ? 1 : 0);
    w.end_row();
  }
}

}  // namespace spinbath
