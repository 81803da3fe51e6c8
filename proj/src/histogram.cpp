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


#include "spinbath/histogram.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "spinbath/csv.hpp"
#include "spinbath/dynamics.hpp"
#include "spinbath/hamiltonians.hpp"

namespace spinbath {

FlipFlopHistogram flipflop_histogram(const BathGeometry& geom, const IonModel& bath_ion, const Vec3& field,
                                     int n_spins, int n_up) {
  if (n_spins < 1 || n_up < 0 || n_up > n_spins) throw ParameterError("histogram: invalid spin counts");
  if (geom.size() < static_cast<std::size_t>(n_spins))
    throw GeometryError("histogram: need " + std::to_string(n_spins) + " bath positions, have " +
                        std::to_string(geom.size()));
  if (bath_ion.kind != IonKind::kBare || bath_ion.dimension() != 2)
    throw ConfigError("histogram: bath species must be a bare spin-1/2");

  // Express positions and field in a frame whose z axis is the field, so the
  // computational basis is quantized along the field.
  const Vec3 axis = default_secular_axis(field);
  const Mat3 frame = quantization_frame(axis);
  std::vector<BathSite> sites;
  for (int k = 0; k < n_spins; ++k) {
    const BathSite& s = geom[static_cast<std::size_t>(k)];
    sites.push_back({s.label, frame.transpose() * s.position, 0.0});
  }
  const BathGeometry local(sites);
  const Vec3 local_field = frame.transpose() * field;
  const CMatrix h = build_bath(local, bath_ion, local_field, BathTermPolicy::kFlipFlop, Vec3::UnitZ());

  // Basis index bit = 1 means spin down (index 1 of the m = +1/2, -1/2 basis).
  std::vector<int> sector;
  const int dim = 1 << n_spins;
  for (int idx = 0; idx < dim; ++idx)
    if (n_spins - std::popcount(static_cast<unsigned>(idx)) == n_up) sector.push_back(idx);
  const auto m = static_cast<Eigen::Index>(sector.size());
  CMatrix block(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) block(i, j) = h(sector[static_cast<std::size_t>(i)], sector[static_cast<std::size_t>(j)]);
  const EigenSystem eig = diagonalize(block);

  FlipFlopHistogram out;
  out.energies_hz.assign(eig.values.data(), eig.values.data() + eig.values.size());
  const double lo = out.energies_hz.front(), hi = out.energies_hz.back();
  const double span = hi - lo;
  if (!(span > 1e-9 * std::max(1.0, std::abs(hi)))) {
    out.degenerate = true;
    return out;
  }
  out.bin_width_hz = span / kHistogramBins;
  out.counts.assign(kHistogramBins, 0.0);
  for (int b = 0; b < kHistogramBins; ++b) out.bin_centers_hz.push_back(lo + (b + 0.5) * out.bin_width_hz);
  for (double e : out.energies_hz) {
    int b = static_cast<int>((e - lo) / out.bin_width_hz);
    b = std::clamp(b, 0, kHistogramBins - 1);
    out.counts[static_cast<std::size_t>(b)] += 1.0;
  }
  out.gaussian = fit_gaussian(out.bin_centers_hz, out.counts);
  return out;
}

void write_histogram_csv(std::ostream& out, const FlipFlopHistogram& h) {
  CsvWriter w(out, {"energy_hz"});
  for (double e : h.energies_hz) {
    w << e;
    w.end_row();
  }
}

}  // namespace spinbath
