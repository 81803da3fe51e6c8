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

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "spinbath/analysis.hpp"
#include "spinbath/geometry.hpp"

namespace spinbath {

struct SweepPoint {
  FieldSpec field;
  CoherenceEstimate estimate;
  // Provenance.
  int bath_ions = 0;
  std::string sequence;
  double horizon_s = 0.0;
};

// Dense (theta, phi, B) grid built from the distinct values of the points.
struct SweepResult {
  std::vector<double> thetas;
  std::vector<double> phis;
  std::vector<double> amplitudes;
  std::vector<std::optional<SweepPoint>> cells;  // index = (i_theta * n_phi + i_phi) * n_B + i_B

  std::size_t size() const { return cells.size(); }
  std::size_t missing() const;
  const std::optional<SweepPoint>& at(std::size_t i_theta, std::size_t i_phi, std::size_t i_b) const;
};

// Throws AggregationError when two points share grid coordinates.
SweepResult assemble_sweep(const std::vector<SweepPoint>& points);

// Rows `theta_rad, phi_rad, B_T, T_s, valid` in grid order; missing cells
// are omitted.
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

}  // namespace spinbath
