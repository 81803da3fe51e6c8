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


#include "spinbath/pulses.hpp"

#include <array>
#include <cmath>

#include "spinbath/dynamics.hpp"
#include "spinbath/hamiltonians.hpp"
#include "spinbath/spin_operators.hpp"

namespace spinbath {

PulseSpec PulseSpec::ideal(double angle) {
  PulseSpec p;
  p.kind = PulseKind::kIdealRotation;
  p.angle = angle;
  return p;
}

PulseSpec PulseSpec::adiabatic(double fwhm_s, double chirp_span_hz, double peak_rabi_hz, Passage passage) {
  PulseSpec p;
  p.kind = PulseKind::kAdiabaticChirp;
  p.fwhm_s = fwhm_s;
  p.chirp_span_hz = chirp_span_hz;
  p.peak_rabi_hz = peak_rabi_hz;
  p.passage = passage;
  return p;
}

void PulseSpec::validate() const {
  if (!std::isfinite(angle)) throw ParameterError("pulse angle must be finite");
  if (kind == PulseKind::kIdealRotation) return;
  if (!(fwhm_s > 0.0) || !std::isfinite(fwhm_s)) throw ParameterError("pulse FWHM must be > 0");
  if (!(chirp_span_hz >= 0.0) || !std::isfinite(chirp_span_hz)) throw ParameterError("chirp span must be >= 0");
  if (!(peak_rabi_hz > 0.0) || !std::isfinite(peak_rabi_hz)) throw ParameterError("peak Rabi frequency must be > 0");
  if (!(tolerance > 0.0)) throw ParameterError("pulse tolerance must be > 0");
  if (max_refinements < 0) throw ParameterError("pulse max_refinements must be >= 0");
  if (rf_axis && !(rf_axis->norm() > 0.0)) throw ParameterError("RF axis must be non-zero");
}

double PulseSpec::time_constant() const { return fwhm_s / (2.0 * std::acosh(2.0)); }

CMatrix ideal_rotation(const SystemAssembly& sys, double angle) {
  const int dc = sys.central_dim;
  const CVector va = sys.levels.vectors.col(sys.transition.first);
  const CVector vb = sys.levels.vectors.col(sys.transition.second);
  const CMatrix pa = va * va.adjoint(), pb = vb * vb.adjoint();
  const CMatrix x = va * vb.adjoint() + vb * va.adjoint();
  return CMatrix::Identity(dc, dc) + (std::cos(angle / 2.0) - 1.0) * (pa + pb) -
         cplx(0.0, std::sin(angle / 2.0)) * x;
}

Vec3 default_rf_axis(const SystemAssembly& sys) {
  const CVector va = sys.levels.vectors.col(sys.transition.first);
  const CVector vb = sys.levels.vectors.col(sys.transition.second);
  Vec3 best = LabFrame::d1();
  double best_val = -1.0;
  for (const Vec3& axis : {LabFrame::d1(), LabFrame::d2(), LabFrame::b()}) {
    const double v = std::abs(va.dot(rf_hamiltonian(sys.central, axis) * vb));
    if (v > best_val * (1.0 + 1e-12)) {
      best_val = v;
      best = axis;
    }
  }
  return best;
}

namespace {

// Rotating-frame propagation of the chirped pulse, in the product basis
// (central eigenbasis) (x) (bath lab basis).
class ChirpPropagator {
 public:
  ChirpPropagator(const SystemAssembly& sys, const PulseSpec& pulse) : sys_(sys), pulse_(pulse) {
    const int dc = sys.central_dim, db = sys.bath_dim;
    const auto [a, b] = sys.transition;
    energies_ = sys.levels.energies;
    const bool b_upper = energies_[b] >= energies_[a];
    const int lo = b_upper ? a : b, up = b_upper ? b : a;
    upper_ = std::vector<bool>(static_cast<std::size_t>(dc), false);
    for (int s : sys.levels.group_members(up)) upper_[static_cast<std::size_t>(s)] = true;
    std::vector<bool> lower(static_cast<std::size_t>(dc), false);
    for (int s : sys.levels.group_members(lo)) lower[static_cast<std::size_t>(s)] = true;

    const double f_ab = std::abs(energies_[b] - energies_[a]);
    center_ = pulse.center_hz.value_or(f_ab);

    // Drive operator restricted to the lo <-> up group blocks, normalized so
    // that <lo|X|up> = 1 on the addressed pair.
    const Vec3 axis = pulse.rf_axis ? Vec3(pulse.rf_axis->normalized()) : default_rf_axis(sys);
    const CMatrix& p = sys.levels.vectors;
    const CMatrix xe = p.adjoint() * rf_hamiltonian(sys.central, axis) * p;
    const cplx ref = xe(lo, up);
    if (std::abs(ref) < 1e-12 * std::max(xe.norm(), 1e-300))
      throw NumericError("adiabatic pulse: addressed transition is not driven along the RF axis");
    drive_ = CMatrix::Zero(dc, dc);
    for (int s = 0; s < dc; ++s)
      for (int t = 0; t < dc; ++t)
        if (lower[static_cast<std::size_t>(s)] && upper_[static_cast<std::size_t>(t)]) {
          drive_(s, t) = xe(s, t) / ref;
          drive_(t, s) = std::conj(drive_(s, t));
        }

    // Static part: bath Hamiltonian plus coupling, with couplings between the
    // rotating (upper) block and the rest dropped (rotating-wave approximation).
    CMatrix w = transform_central(sys.h_int, p, db);
    for (int s = 0; s < dc; ++s)
      for (int t = 0; t < dc; ++t)
        if (upper_[static_cast<std::size_t>(s)] != upper_[static_cast<std::size_t>(t)])
          w.block(s * db, t * db, db, db).setZero();
    for (int s = 0; s < dc; ++s) w.block(s * db, s * db, db, db) += sys.h_bath;
    static_eig_ = diagonalize(w);

    t0_ = pulse.time_constant();
    t_start_ = -5.0 * t0_;
    t_end_ = pulse.passage == Passage::kHalf ? 0.0 : 5.0 * t0_;
    const double gap = std::hypot(pulse.peak_rabi_hz, 0.5 * pulse.chirp_span_hz + std::abs(center_ - f_ab));
    initial_steps_ = std::max(1, static_cast<int>(std::ceil((t_end_ - t_start_) * kTwoPi * gap / 0.1)));
  }

  CMatrix run(const CMatrix& columns, PulseStats* stats) const {
    const int db = sys_.bath_dim;
    const CMatrix& p = sys_.levels.vectors;
    const CMatrix start = apply_central_left(p.adjoint(), columns, db);
    int steps = initial_steps_;
    CMatrix prev = integrate(start, steps);
    double diff = 0.0;
    bool converged = false;
    for (int r = 0; r < pulse_.max_refinements; ++r) {
      steps *= 2;
      CMatrix next = integrate(start, steps);
      diff = (next - prev).cwiseAbs().maxCoeff();
      prev = std::move(next);
      if (diff < pulse_.tolerance) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericError("adiabatic pulse: integration did not converge (last change " + std::to_string(diff) + ")");
    if (stats) *stats = {steps, diff};
    // Back to the lab frame: exp(-i 2 pi phi_end K), then to the lab basis.
    const double phi_end = frame_phase(t_end_);
    const int dc = sys_.central_dim;
    CMatrix frame = CMatrix::Identity(dc, dc);
    for (int s = 0; s < dc; ++s)
      if (upper_[static_cast<std::size_t>(s)]) frame(s, s) = phase_cycles(phi_end);
    return apply_central_left(p, apply_central_left(frame, prev, db), db);
  }

 private:
  double frame_phase(double t) const {
    const double half = 0.5 * pulse_.chirp_span_hz;
    return center_ * (t - t_start_) +
           half * t0_ * (std::log(std::cosh(t / t0_)) - std::log(std::cosh(t_start_ / t0_)));
  }

  CMatrix central_hamiltonian_at(double t) const {
    const double omega = pulse_.peak_rabi_hz / std::cosh(t / t0_);
    const double f = center_ + 0.5 * pulse_.chirp_span_hz * std::tanh(t / t0_);
    const int dc = sys_.central_dim;
    CMatrix h = 0.5 * omega * drive_;
    for (int s = 0; s < dc; ++s) h(s, s) += energies_[s] - (upper_[static_cast<std::size_t>(s)] ? f : 0.0);
    return h;
  }

  CMatrix central_step(double t_mid, double tau) const {
    return diagonalize(central_hamiltonian_at(t_mid)).propagator(tau);
  }

  CMatrix integrate(const CMatrix& start, int steps) const {
    // Fourth-order composition of symmetric (Strang) steps.
    const double cbrt2 = std::cbrt(2.0);
    const double w1 = 1.0 / (2.0 - cbrt2), w0 = -cbrt2 / (2.0 - cbrt2);
    const double h = (t_end_ - t_start_) / steps;
    const std::array<double, 3> weights{w1, w0, w1};
    const CMatrix static_w1 = static_eig_.propagator(w1 * h);
    const CMatrix static_w0 = static_eig_.propagator(w0 * h);
    const int db = sys_.bath_dim;
    CMatrix v = start;
    for (int k = 0; k < steps; ++k) {
      double t = t_start_ + k * h;
      for (int j = 0; j < 3; ++j) {
        const double tau = weights[static_cast<std::size_t>(j)] * h;
        const CMatrix half = central_step(t + 0.5 * tau, 0.5 * tau);
        v = apply_central_left(half, v, db);
        v = (j == 1 ? static_w0 : static_w1) * v;
        v = apply_central_left(half, v, db);
        t += tau;
      }
    }
    return v;
  }

  const SystemAssembly& sys_;
  PulseSpec pulse_;
  RVector energies_;
  std::vector<bool> upper_;
  double center_ = 0.0;
  CMatrix drive_;
  EigenSystem static_eig_;
  double t0_ = 0.0, t_start_ = 0.0, t_end_ = 0.0;
  int initial_steps_ = 1;
};

}  // namespace

CMatrix apply_pulse_columns(const SystemAssembly& sys, const PulseSpec& pulse, const CMatrix& columns,
                            PulseStats* stats) {
  pulse.validate();
  if (columns.rows() != sys.dimension()) throw DomainError("apply_pulse: dimension mismatch");
  if (pulse.kind == PulseKind::kIdealRotation) {
    if (stats) *stats = {};
    return apply_central_left(ideal_rotation(sys, pulse.angle), columns, sys.bath_dim);
  }
  return ChirpPropagator(sys, pulse).run(columns, stats);
}

CMatrix pulse_unitary(const SystemAssembly& sys, const PulseSpec& pulse, PulseStats* stats) {
  if (pulse.kind == PulseKind::kIdealRotation)
    return kron(ideal_rotation(sys, pulse.angle), CMatrix::Identity(sys.bath_dim, sys.bath_dim));
  return apply_pulse_columns(sys, pulse, CMatrix::Identity(sys.dimension(), sys.dimension()), stats);
}

CMatrix density_factor(const CMatrix& rho) {
  const EigenSystem e = diagonalize(rho);
  const double max_w = e.values.size() ? e.values.cwiseAbs().maxCoeff() : 0.0;
  std::vector<int> keep;
  for (int k = 0; k < e.dimension(); ++k)
    if (e.values[k] > 1e-14 * max_w) keep.push_back(k);
  CMatrix v(rho.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    v.col(static_cast<Eigen::Index>(j)) = std::sqrt(e.values[keep[j]]) * e.vectors.col(keep[j]);
  return v;
}

CMatrix apply_pulse(const CMatrix& rho, const PulseSpec& pulse, const SystemAssembly& sys) {
  if (pulse.kind == PulseKind::kIdealRotation) {
    const CMatrix u = ideal_rotation(sys, pulse.angle);
    return transform_central(rho, u.adjoint(), sys.bath_dim);
  }
  const CMatrix v = apply_pulse_columns(sys, pulse, density_factor(rho));
  return v * v.adjoint();
}

}  // namespace spinbath
