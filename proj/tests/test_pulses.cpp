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


#include <doctest.h>

#include "oracles.hpp"
#include "spinbath/hamiltonians.hpp"
#include "spinbath/pulses.hpp"

using namespace spinbath;

namespace {

const std::string kData = SPINBATH_DATA_DIR;

SystemAssembly eu_system(std::size_t n, const Vec3& b) {
  const IonModel eu = load_species_file(kData + "/species/eu.json");
  const IonModel y = load_species_file(kData + "/species/y.json");
  return assemble_system(eu, y, load_bath_geometry_file(kData + "/positions/y_synthetic.csv", n), b);
}

}  // namespace

TEST_CASE("ideal rotations act on the addressed pair only") {
  const SystemAssembly sys = eu_system(1, Vec3(60e-6, 0, 0));
  const auto [a, b] = sys.transition;
  const CMatrix& p = sys.levels.vectors;
  const CMatrix r = ideal_rotation(sys, kPi);
  const CMatrix in_levels = p.adjoint() * r * p;
  CHECK(std::abs(std::abs(in_levels(b, a)) - 1.0) < 1e-12);
  CHECK(std::abs(in_levels(a, a)) < 1e-12);
  for (int s = 0; s < 6; ++s)
    if (s != a && s != b) CHECK(std::abs(in_levels(s, s) - 1.0) < 1e-12);
  CHECK((r.adjoint() * r - CMatrix::Identity(6, 6)).norm() < 1e-12);
  const CMatrix half = ideal_rotation(sys, kPi / 2);
  CHECK((half * half - r).norm() < 1e-12);

  const CMatrix u = pulse_unitary(sys, PulseSpec::ideal(kPi / 2));
  CHECK((u - oracle::kron(half, oracle::identity(sys.bath_dim))).norm() < 1e-12);
  const CMatrix rho = apply_pulse(sys.rho0, PulseSpec::ideal(kPi / 2), sys);
  CHECK((rho - u * sys.rho0 * u.adjoint()).norm() < 1e-12);
}

TEST_CASE("density factor reproduces the density matrix") {
  const SystemAssembly sys = eu_system(2, Vec3(60e-6, 0, 0));
  const CMatrix v = density_factor(sys.rho0);
  CHECK(v.cols() == 8);
  CHECK((v * v.adjoint() - sys.rho0).norm() < 1e-13);
}

TEST_CASE("pulse validation") {
  PulseSpec p = PulseSpec::adiabatic(200e-6, 50e3, 20e3, Passage::kFull);
  CHECK_NOTHROW(p.validate());
  CHECK(p.time_constant() == doctest::Approx(200e-6 / (2 * std::log(2 + std::sqrt(3.0)))));
  p.fwhm_s = 0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = PulseSpec::adiabatic(200e-6, -1, 20e3, Passage::kFull);
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = PulseSpec::adiabatic(200e-6, 50e3, 0, Passage::kFull);
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = PulseSpec::adiabatic(200e-6, 50e3, 20e3, Passage::kFull);
  p.rf_axis = Vec3::Zero();
  CHECK_THROWS_AS(p.validate(), ParameterError);
  CHECK_THROWS_AS(PulseSpec::ideal(std::nan("")).validate(), ParameterError);
}

TEST_CASE("adiabatic passage agrees with an RK4 integration of the rotating-frame model") {
  const SystemAssembly sys = eu_system(0, Vec3(60e-6, 0, 0));
  const auto [a, b] = sys.transition;
  const CMatrix& p = sys.levels.vectors;
  for (Passage passage : {Passage::kHalf, Passage::kFull}) {
    PulseSpec pulse = PulseSpec::adiabatic(200e-6, 50e3, 20e3, passage);
    PulseStats stats;
    const CMatrix u = pulse_unitary(sys, pulse, &stats);
    CHECK((u.adjoint() * u - CMatrix::Identity(6, 6)).norm() < 1e-8);
    CHECK(stats.difference < pulse.tolerance);

    // Rotating-frame reference: the upper group rotates at the chirped
    // carrier and the drive couples it to the lower group.
    const Vec3 axis = default_rf_axis(sys);
    const CMatrix xe = p.adjoint() * rf_hamiltonian(sys.central, axis) * p;
    const bool b_above = sys.levels.energies[b] > sys.levels.energies[a];
    const int lo = b_above ? a : b, up = b_above ? b : a;
    const auto lower = sys.levels.group_members(lo), upper = sys.levels.group_members(up);
    CMatrix drive = CMatrix::Zero(6, 6);
    for (int s : lower)
      for (int t : upper) {
        drive(s, t) = xe(s, t) / xe(lo, up);
        drive(t, s) = std::conj(drive(s, t));
      }
    const double t0 = pulse.time_constant(), f_ab = std::abs(sys.transition_frequency());
    const auto h = [&](double t) {
      CMatrix m = 0.5 * pulse.peak_rabi_hz / std::cosh(t / t0) * drive;
      const double f = f_ab + 0.5 * pulse.chirp_span_hz * std::tanh(t / t0);
      // Energies relative to the lower level (a global phase) keep RK4 stable.
      for (int s = 0; s < 6; ++s) m(s, s) += sys.levels.energies[s] - sys.levels.energies[lo];
      for (int s : upper) m(s, s) -= f;
      return m;
    };
    CVector start = CVector::Zero(6);
    start[a] = 1.0;
    const double t_end = passage == Passage::kHalf ? 0.0 : 5 * t0;
    const CVector ref = oracle::rk4(h, start, -5 * t0, t_end, 40000);
    const CVector got = p.adjoint() * u * p.col(a);
    for (int s = 0; s < 6; ++s) {
      INFO("level " << s << " got " << std::norm(got[s]) << " ref " << std::norm(ref[s]));
      CHECK(std::abs(std::norm(got[s]) - std::norm(ref[s])) < 1e-6);
    }

    double in_target = 0.0;
    for (int s : sys.levels.group_members(b)) in_target += std::norm(got[s]);
    if (passage == Passage::kFull)
      CHECK(in_target > 0.98);
    else
      CHECK(std::abs(in_target - 0.5) < 0.05);
  }
}
