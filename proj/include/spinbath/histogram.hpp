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

#include <ostream>
#include <vector>

#include "spinbath/fitting.hpp"
#include "spinbath/geometry.hpp"
#include "spinbath/ion_model.hpp"

namespace spinbath {

struct FlipFlopHistogram {
  std::vector<double> energies_hz;  // sorted eigenvalues of the fixed-projection sector
  std::vector<double> bin_centers_hz;
  std::vector<double> counts;
  double bin_width_hz = 0.0;
  bool degenerate = false;  // zero spread: no Gaussian fitted
  GaussianFit gaussian;
};

// Number of bins of the histogram (bin width = span / kHistogramBins).
inline constexpr int kHistogramBins = 25;

// Diagonalizes the flip-flop-truncated bath of the first `n_spins` ions
// within the sector with `n_up` spins up along the field (or b at zero
// field), then fits a Gaussian to the binned energies. Throws GeometryError
// when fewer than n_spins positions are available and ConfigError for a
// non spin-1/2 bath species.
FlipFlopHistogram flipflop_histogram(const BathGeometry& geom, const IonModel& bath_ion, const Vec3& field,
                                     int n_spins = 10, int n_up = 5);

void write_histogram_csv(std::ostream& out, const FlipFlopHistogram& h);

}  // namespace spinbath
