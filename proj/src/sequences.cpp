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


#include "spinbath/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spinbath/csv.hpp"
#include "spinbath/spin_operators.hpp"

namespace spinbath {

namespace {

// X(l, k) = e^{-i 2 pi lambda_l t_k}
CMatrix phase_matrix(const RVector& lambda, const std::vector<double>& times) {
  CMatrix x(lambda.size(), static_cast<Eigen::Index>(times.size()));
  for (Eigen::Index k = 0; k < x.cols(); ++k)
    for (Eigen::Index l = 0; l < x.rows(); ++l) x(l, k) = phase_cycles(lambda[l] * times[static_cast<std::size_t>(k)]);
  return x;
}

// c_k = sum_{l,l'} G_{l l'} e^{i 2 pi (lambda_l' - lambda_l) t_k}
std::vector<cplx> amplitude_series(const CMatrix& g, const RVector& lambda, const std::vector<double>& times) {
  const CMatrix x = phase_matrix(lambda, times);
  const CMatrix gx = g * x.conjugate();
  std::vector<cplx> c(times.size());
  for (std::size_t k = 0; k < times.size(); ++k)
    c[k] = (x.col(static_cast<Eigen::Index>(k)).array() * gx.col(static_cast<Eigen::Index>(k)).array()).sum();
  return c;
}

// P^dagger readout P for readout = |a><b| (x) 1.
CMatrix readout_in_eigenbasis(const SystemAssembly& sys, const EigenSystem& eig) {
  const CVector va = sys.levels.vectors.col(sys.transition.first);
  const CVector vb = sys.levels.vectors.col(sys.transition.second);
  const CMatrix ab = va * vb.adjoint();
  return eig.vectors.adjoint() * apply_central_left(ab, eig.vectors, sys.bath_dim);
}

DecayTrace make_trace(std::vector<double> times, std::vector<cplx> amplitude) {
  DecayTrace tr;
  tr.times = std::move(times);
  tr.amplitude = std::move(amplitude);
  tr.normalize();
  return tr;
}

void check_times(const std::vector<double>& times) {
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw ParameterError("time grid must be strictly increasing");
}

}  // namespace

FrequencyDecomposition frequency_decomposition(const SystemAssembly& sys, const EigenSystem& eig,
                                               const CMatrix& rho_factor) {
  const CMatrix vt = eig.vectors.adjoint() * rho_factor;
  const CMatrix rho_t = vt * vt.adjoint();
  const CMatrix r_t = readout_in_eigenbasis(sys, eig);
  return {eig, rho_t.cwiseProduct(r_t.transpose())};
}

DecayTrace fid_decay(const SystemAssembly& sys, const EigenSystem& eig, const PulseSpec& pulse,
                     const std::vector<double>& times) {
  check_times(times);
  const CMatrix v = apply_pulse_columns(sys, pulse, sys.rho0_factor);
  const FrequencyDecomposition fd = frequency_decomposition(sys, eig, v);
  return make_trace(times, amplitude_series(fd.weights, eig.values, times));
}

DecayTrace fid_decay(const SystemAssembly& sys, const PulseSpec& pulse, const std::vector<double>& times) {
  return fid_decay(sys, diagonalize(sys.total()), pulse, times);
}

DecayTrace hahn_echo(const SystemAssembly& sys, const PulseSpec& pulse_half, const PulseSpec& pulse_pi,
                     const std::vector<double>& delays) {
  check_times(delays);
  for (double tau : delays)
    if (tau < 0.0) throw ParameterError("echo delays must be >= 0");
  const EigenSystem eig = diagonalize(sys.total());
  const CMatrix& p = eig.vectors;
  const CMatrix v0 = p.adjoint() * apply_pulse_columns(sys, pulse_half, sys.rho0_factor);
  CMatrix u_pi;
  if (pulse_pi.kind == PulseKind::kIdealRotation)
    u_pi = p.adjoint() * apply_central_left(ideal_rotation(sys, pulse_pi.angle), p, sys.bath_dim);
  else
    u_pi = p.adjoint() * apply_pulse_columns(sys, pulse_pi, p);
  const CMatrix r_t = readout_in_eigenbasis(sys, eig);

  std::vector<double> times(delays.size());
  std::vector<cplx> amp(delays.size());
  for (std::size_t k = 0; k < delays.size(); ++k) {
    const double tau = delays[k];
    CVector ph(eig.dimension());
    for (int l = 0; l < eig.dimension(); ++l) ph[l] = phase_cycles(eig.values[l] * tau);
    const CMatrix v1 = ph.asDiagonal() * v0;
    const CMatrix v3 = ph.asDiagonal() * (u_pi * v1);
    amp[k] = (v3.conjugate().array() * (r_t * v3).array()).sum();
    times[k] = 2.0 * tau;
  }
  return make_trace(std::move(times), std::move(amp));
}

DecayTrace loschmidt_decay(const SystemAssembly& sys, const std::vector<double>& times) {
  check_times(times);
  const int db = sys.bath_dim;
  const auto [a, b] = sys.transition;
  const CMatrix coupling = transform_central(sys.h_int, sys.levels.vectors, db);
  const CMatrix id = CMatrix::Identity(db, db);
  const auto conditioned = [&](int s) {
    return EigenSystem(diagonalize(CMatrix(sys.levels.energies[s] * id + sys.h_bath +
                                           coupling.block(s * db, s * db, db, db))));
  };
  const EigenSystem ea = conditioned(a), eb = conditioned(b);
  // Bath reduced state of rho0 (identical for every central level).
  CMatrix rho_b = CMatrix::Zero(db, db);
  const int dc = sys.central_dim;
  for (int s = 0; s < dc; ++s) rho_b += sys.rho0.block(s * db, s * db, db, db);
  rho_b /= rho_b.trace();
  // Tr[rho_B Pa e^{i Λa t} Pa^† Pb e^{-i Λb t} Pb^†] = sum_jk M_jk e^{i2pi(λa_j - λb_k)t}
  const CMatrix ov = ea.vectors.adjoint() * eb.vectors;
  const CMatrix rb = eb.vectors.adjoint() * rho_b * ea.vectors;
  const CMatrix m = ov.cwiseProduct(rb.transpose());
  const CMatrix xa = phase_matrix(ea.values, times), xb = phase_matrix(eb.values, times);
  std::vector<cplx> amp(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    amp[k] = xa.col(kk).conjugate().transpose() * m * xb.col(kk);
  }
  return make_trace(times, std::move(amp));
}

std::vector<FrequencyComponent> dynamical_frequencies(const FrequencyDecomposition& fd, double relative_floor) {
  const CMatrix& g = fd.weights;
  const double gmax = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;
  std::vector<FrequencyComponent> out;
  for (Eigen::Index lp = 0; lp < g.cols(); ++lp)
    for (Eigen::Index l = 0; l < g.rows(); ++l) {
      const double w = std::abs(g(l, lp));
      if (w == 0.0 || w < relative_floor * gmax) continue;
      FrequencyComponent c;
      c.l = static_cast<int>(l);
      c.lp = static_cast<int>(lp);
      c.delta_hz = l == lp ? 0.0 : fd.eig.values[lp] - fd.eig.values[l];
      c.weight = g(l, lp);
      out.push_back(c);
    }
  std::stable_sort(out.begin(), out.end(), [](const FrequencyComponent& x, const FrequencyComponent& y) {
    const double ax = std::abs(x.weight), ay = std::abs(y.weight);
    if (ax != ay) return ax > ay;
    if (x.frequency() != y.frequency()) return x.frequency() < y.frequency();
    return std::make_pair(x.l, x.lp) < std::make_pair(y.l, y.lp);
  });
  return out;
}

std::vector<FrequencyComponent> dynamical_frequencies(const SystemAssembly& sys, const CMatrix& rho_after_pulse,
                                                      double relative_floor) {
  const EigenSystem eig = diagonalize(sys.total());
  return dynamical_frequencies(frequency_decomposition(sys, eig, density_factor(rho_after_pulse)), relative_floor);
}

std::vector<cplx> reconstruct_amplitude(const std::vector<FrequencyComponent>& comps,
                                        const std::vector<double>& times) {
  std::vector<cplx> c(times.size(), cplx(0.0, 0.0));
  for (std::size_t k = 0; k < times.size(); ++k)
    for (const auto& comp : comps) c[k] += comp.weight * std::conj(phase_cycles(comp.delta_hz * times[k]));
  return c;
}

std::string to_string(BranchKind kind) {
  switch (kind) {
    case BranchKind::kMainLine:
      return "main";
    case BranchKind::kCentralFlip:
      return "central_flip";
    case BranchKind::kBathFlip:
      return "bath_flip";
    case BranchKind::kFlipFlop:
      return "flip_flop";
  }
  return "unknown";
}

UncoupledBasis uncoupled_basis(const SystemAssembly& sys) {
  const int dc = sys.central_dim, db = sys.bath_dim, n = dc * db;
  const EigenSystem bath = diagonalize(sys.h_bath);
  // Total bath spin projection along the secular axis.
  const Vec3 axis = sys.options.secular_axis.value_or(default_secular_axis(sys.field)).normalized();
  std::vector<int> bath_dims(sys.geometry.size(), sys.bath_ion.dimension());
  CMatrix mz = CMatrix::Zero(db, db);
  if (!sys.geometry.empty()) {
    const SpinOperators op = spin_operators(sys.bath_ion.dimension());
    const CMatrix local = axis.x() * op.ix + axis.y() * op.iy + axis.z() * op.iz;
    for (std::size_t k = 0; k < sys.geometry.size(); ++k) add_embedded(mz, bath_dims, {k}, local);
  }
  struct Entry {
    double e;
    int s, beta;
  };
  std::vector<Entry> entries;
  for (int s = 0; s < dc; ++s)
    for (int beta = 0; beta < db; ++beta) entries.push_back({sys.levels.energies[s] + bath.values[beta], s, beta});
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.e < y.e; });
  UncoupledBasis ub;
  ub.energies.resize(n);
  ub.vectors.resize(n, n);
  for (int j = 0; j < n; ++j) {
    const Entry& en = entries[static_cast<std::size_t>(j)];
    ub.energies[j] = en.e;
    ub.vectors.col(j) = kron(sys.levels.vectors.col(en.s), bath.vectors.col(en.beta));
    ub.central_level.push_back(en.s);
    ub.bath_state.push_back(en.beta);
    const CVector u = bath.vectors.col(en.beta);
    ub.bath_polarization.push_back(u.dot(mz * u).real());
  }
  return ub;
}

std::vector<ClassifiedComponent> classify_components(const SystemAssembly& sys, const EigenSystem& eig,
                                                     const std::vector<FrequencyComponent>& comps) {
  const UncoupledBasis ub = uncoupled_basis(sys);
  const RMatrix ov = (ub.vectors.adjoint() * eig.vectors).cwiseAbs();
  std::vector<int> dominant(static_cast<std::size_t>(eig.dimension()));
  for (int l = 0; l < eig.dimension(); ++l) {
    Eigen::Index j = 0;
    ov.col(l).maxCoeff(&j);
    dominant[static_cast<std::size_t>(l)] = static_cast<int>(j);
  }
  const double carrier = std::abs(sys.transition_frequency());
  const auto [a, b] = sys.transition;
  std::vector<ClassifiedComponent> out;
  out.reserve(comps.size());
  for (const auto& c : comps) {
    const int jl = dominant[static_cast<std::size_t>(c.l)], jlp = dominant[static_cast<std::size_t>(c.lp)];
    ClassifiedComponent cc;
    cc.component = c;
    cc.offset_hz = c.frequency() - carrier;
    if (ub.central_level[static_cast<std::size_t>(jl)] != b || ub.central_level[static_cast<std::size_t>(jlp)] != a)
      cc.kind = BranchKind::kCentralFlip;
    else if (ub.bath_state[static_cast<std::size_t>(jl)] == ub.bath_state[static_cast<std::size_t>(jlp)])
      cc.kind = BranchKind::kMainLine;
    else if (std::abs(ub.bath_polarization[static_cast<std::size_t>(jl)] -
                      ub.bath_polarization[static_cast<std::size_t>(jlp)]) > 0.5)
      cc.kind = BranchKind::kBathFlip;
    else
      cc.kind = BranchKind::kFlipFlop;
    out.push_back(cc);
  }
  return out;
}

void write_classified_csv(std::ostream& out, double field_t, const std::vector<ClassifiedComponent>& comps) {
  CsvWriter w(out, {"B_T", "freq_hz", "offset_hz", "re_g", "im_g", "abs_g", "branch"});
  for (const auto& c : comps) {
    w << field_t << c.component.frequency() << c.offset_hz << c.component.weight.real() << c.component.weight.imag()
      << std::abs(c.component.weight) << to_string(c.kind);
    w.end_row();
  }
}

RMatrix population_dynamics(const SystemAssembly& sys, int initial_index, const std::vector<double>& times) {
  const int n = sys.dimension();
  if (initial_index < 0 || initial_index >= n) throw ParameterError("population_dynamics: initial index out of range");
  const UncoupledBasis ub = uncoupled_basis(sys);
  const EigenSystem eig = diagonalize(sys.total());
  const CMatrix m = ub.vectors.adjoint() * eig.vectors;
  const CVector v = eig.vectors.adjoint() * ub.vectors.col(initial_index);
  CMatrix y = phase_matrix(eig.values, times);
  y = v.asDiagonal() * y;
  const CMatrix amp = m * y;
  return amp.cwiseAbs2();
}

}  // namespace spinbath
