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
#include "spinbath/sequences.hpp"

using namespace spinbath;

namespace {

const std::string kData = SPINBATH_DATA_DIR;

SystemAssembly eu_system(std::size_t n, const Vec3& b, const AssemblyOptions& opt = {}) {
  const IonModel eu = load_species_file(kData + "/species/eu.json");
  const IonModel y = load_species_file(kData + "/species/y.json");
  return assemble_system(eu, y, load_bath_geometry_file(kData + "/positions/y_synthetic.csv", n), b, opt);
}

cplx brute_readout(const SystemAssembly& sys, const CMatrix& rho, const CMatrix& u) {
  return (u * rho * u.adjoint() * sys.readout).trace();
}

}  // namespace

TEST_CASE("free-induction decay matches brute-force propagation") {
  const SystemAssembly sys = eu_system(2, Vec3(40e-6, 0, 0));
  const CMatrix r = oracle::kron(ideal_rotation(sys, kPi / 2), oracle::identity(sys.bath_dim));
  const CMatrix rho = r * sys.rho0 * r.adjoint();
  const std::vector<double> times{0.0, 1e-4, 7e-4, 3.3e-3};
  const DecayTrace tr = fid_decay(sys, PulseSpec::ideal(kPi / 2), times);
  const CMatrix h = sys.total();
  for (std::size_t k = 0; k < times.size(); ++k)
    CHECK(std::abs(tr.amplitude[k] - brute_readout(sys, rho, oracle::propagator(h, times[k]))) < 1e-9);
  CHECK(tr.intensity[0] == doctest::Approx(1.0));

  // The spectral decomposition reconstructs the same amplitude.
  const auto comps = dynamical_frequencies(sys, rho, 0.0);
  const auto rec = reconstruct_amplitude(comps, times);
  for (std::size_t k = 0; k < times.size(); ++k) CHECK(std::abs(rec[k] - tr.amplitude[k]) < 1e-10);
  for (std::size_t k = 1; k < comps.size(); ++k) CHECK(std::abs(comps[k - 1].weight) >= std::abs(comps[k].weight));
}

TEST_CASE("Hahn echo matches brute-force propagation") {
  const SystemAssembly sys = eu_system(2, Vec3(40e-6, 0, 0));
  const CMatrix r2 = oracle::kron(ideal_rotation(sys, kPi / 2), oracle::identity(sys.bath_dim));
  const CMatrix r1 = oracle::kron(ideal_rotation(sys, kPi), oracle::identity(sys.bath_dim));
  const std::vector<double> delays{0.0, 2e-4, 1.1e-3};
  const DecayTrace tr = hahn_echo(sys, PulseSpec::ideal(kPi / 2), PulseSpec::ideal(kPi), delays);
  const CMatrix h = sys.total();
  for (std::size_t k = 0; k < delays.size(); ++k) {
    const CMatrix u = oracle::propagator(h, delays[k]);
    const CMatrix seq = u * r1 * u * r2;
    CHECK(std::abs(tr.amplitude[k] - brute_readout(sys, sys.rho0, seq)) < 1e-9);
    CHECK(tr.times[k] == doctest::Approx(2 * delays[k]));
  }
  CHECK_THROWS_AS(hahn_echo(sys, PulseSpec::ideal(kPi / 2), PulseSpec::ideal(kPi), {1e-3, 1e-4}), ParameterError);
}

TEST_CASE("without a bath all sequences keep full coherence") {
  const SystemAssembly sys = eu_system(0, Vec3(60e-6, 0, 0));
  const auto times = uniform_times(2e-3, 1e-4);
  for (double v : fid_decay(sys, PulseSpec::ideal(kPi / 2), times).intensity) CHECK(v == doctest::Approx(1.0));
  for (double v : hahn_echo(sys, PulseSpec::ideal(kPi / 2), PulseSpec::ideal(kPi), times).intensity)
    CHECK(v == doctest::Approx(1.0));
  for (double v : loschmidt_decay(sys, times).intensity) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("zero interaction leaves the coherence constant") {
  AssemblyOptions opt;
  const SystemAssembly base = eu_system(2, Vec3(60e-6, 0, 0), opt);
  SystemAssembly sys = base;
  sys.h_int.setZero();
  const auto times = uniform_times(2e-3, 2.5e-4);
  for (double v : fid_decay(sys, PulseSpec::ideal(kPi / 2), times).intensity) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("population dynamics conserve probability") {
  const SystemAssembly sys = eu_system(2, Vec3(10e-6, 0, 0));
  const auto times = uniform_times(5e-3, 5e-4);
  const RMatrix pop = population_dynamics(sys, 0, times);
  REQUIRE(pop.rows() == 24);
  for (Eigen::Index k = 0; k < pop.cols(); ++k) CHECK(pop.col(k).sum() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pop(0, 0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(population_dynamics(sys, 24, times), ParameterError);

  const UncoupledBasis ub = uncoupled_basis(sys);
  for (Eigen::Index j = 1; j < ub.energies.size(); ++j) CHECK(ub.energies[j] >= ub.energies[j - 1]);
  const CMatrix h0 = ub.vectors.adjoint() * sys.h0 * ub.vectors;
  CHECK((h0 - CMatrix(ub.energies.cast<cplx>().asDiagonal())).norm() < 1e-6);
}

TEST_CASE("branch classification of the coherence spectrum") {
  const SystemAssembly sys = eu_system(2, Vec3(10e-6, 0, 0));
  const EigenSystem eig = diagonalize(sys.total());
  const CMatrix rho = apply_pulse(sys.rho0, PulseSpec::ideal(kPi / 2), sys);
  const auto comps = dynamical_frequencies(sys, rho, 1e-6);
  const auto classified = classify_components(sys, eig, comps);
  REQUIRE(!classified.empty());
  // The strongest component is the unperturbed line.
  CHECK(classified.front().kind == BranchKind::kMainLine);
  CHECK(std::abs(classified.front().offset_hz) < 1e3);
  CHECK(to_string(BranchKind::kFlipFlop) == "flip_flop");
}
