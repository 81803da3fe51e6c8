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


#include "spinbath/dynamics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "spinbath/csv.hpp"
#include "spinbath/spin_operators.hpp"

namespace spinbath {

cplx phase_cycles(double x) { return std::polar(1.0, -kTwoPi * (x - std::round(x))); }

CMatrix EigenSystem::propagator(double t) const {
  CVector phase(values.size());
  for (Eigen::Index k = 0; k < values.size(); ++k) phase[k] = phase_cycles(values[k] * t);
  return vectors * phase.asDiagonal() * vectors.adjoint();
}

double EigenSystem::reconstruction_residual(const CMatrix& h) const {
  const CMatrix rec = vectors * values.cast<cplx>().asDiagonal() * vectors.adjoint();
  const double norm = h.norm();
  return norm > 0.0 ? (rec - h).norm() / norm : rec.norm();
}

EigenSystem diagonalize(const CMatrix& h, double hermiticity_tolerance) {
  if (h.rows() != h.cols()) throw NumericError("diagonalize: matrix is not square");
  if (h.rows() == 0) return {};
  const double defect = hermiticity_defect(h);
  if (defect > hermiticity_tolerance)
    throw NumericError("diagonalize: matrix is not Hermitian (relative defect " + format_double(defect) + ")");
  // Symmetrize so the solver sees an exactly Hermitian input.
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericError("diagonalize: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix evolve(const CMatrix& rho0, const EigenSystem& eig, double t) {
  if (rho0.rows() != eig.dimension()) throw DomainError("evolve: dimension mismatch");
  // In the eigenbasis each element only acquires the phase of its Bohr
  // frequency; forming the difference first keeps precision for large
  // eigenvalues.
  CMatrix r = eig.vectors.adjoint() * rho0 * eig.vectors;
  const Eigen::Index n = r.rows();
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) r(i, j) *= phase_cycles((eig.values[i] - eig.values[j]) * t);
  return eig.vectors * r * eig.vectors.adjoint();
}

void DecayTrace::normalize() {
  intensity.resize(amplitude.size());
  normalization = amplitude.empty() ? 1.0 : std::norm(amplitude.front());
  const double scale = normalization > 0.0 ? 1.0 / normalization : 1.0;
  for (std::size_t k = 0; k < amplitude.size(); ++k) intensity[k] = std::norm(amplitude[k]) * scale;
}

std::vector<double> uniform_times(double horizon, double step) {
  if (!(step > 0.0) || !(horizon >= 0.0)) throw ParameterError("time grid needs step > 0 and horizon >= 0");
  const auto n = static_cast<std::size_t>(std::floor(horizon / step * (1.0 + 1e-12))) + 1;
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k) t[k] = static_cast<double>(k) * step;
  return t;
}

void write_trace_csv(std::ostream& out, const DecayTrace& trace) {
  CsvWriter w(out, {"t_s", "re_c", "im_c", "intensity"});
  for (std::size_t k = 0; k < trace.size(); ++k) {
    w << trace.times[k] << trace.amplitude[k].real() << trace.amplitude[k].imag() << trace.intensity[k];
    w.end_row();
  }
}

void write_components_csv(std::ostream& out, const std::vector<FrequencyComponent>& comps) {
  CsvWriter w(out, {"freq_hz", "re_g", "im_g", "abs_g"});
  for (const auto& c : comps) {
    w << c.frequency() << c.weight.real() << c.weight.imag() << std::abs(c.weight);
    w.end_row();
  }
}

}  // namespace spinbath
