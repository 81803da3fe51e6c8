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

#include <random>

#include "oracles.hpp"
#include "spinbath/approximations.hpp"
#include "spinbath/sequences.hpp"

using namespace spinbath;

namespace {

const std::string kData = SPINBATH_DATA_DIR;

}  // namespace

TEST_CASE("single-cluster echo formula agrees with the SU(2) oracle and 2x2 exponentials") {
  const IonModel y = IonModel::bare("Y", 2.1e6);
  std::mt19937 rng(21);
  std::normal_distribution<double> g(0.0, 1e-4);
  const std::vector<double> times{0.0, 3e-5, 4.1e-4, 1.7e-3};
  for (int trial = 0; trial < 20; ++trial) {
    FrozenMoments fm{Vec3(g(rng), g(rng), g(rng)) * 1e11, Vec3(g(rng), g(rng), g(rng)) * 1e11};
    const Vec3 r = Vec3(g(rng), g(rng), g(rng)).normalized() * 5e-10;
    const Vec3 b(g(rng), g(rng), g(rng));
    const EffectiveFieldPair p = effective_fields(fm, y, r, b);
    const auto closed = cce1_cluster(p, times);
    const auto brute = brute_cluster_echo(fm, y, r, b, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
      const cplx ref = oracle::spin_half_echo(p.b_minus, p.b_plus, 2.1e6, times[k]);
      CHECK(std::abs(closed[k] - ref.real()) < 1e-10);
      CHECK(std::abs(ref.imag()) < 1e-10);
      CHECK(std::abs(brute[k] - ref) < 1e-10);
    }
  }
}

TEST_CASE("dipole field follows the pair coupling convention") {
  // gamma (B_dip . I) must equal the pair energy of a classical moment m
  // with a bath spin, for every I component.
  const auto s = oracle::spin_matrices(2);
  const Vec3 m(3e7, -1e7, 2e7), r(3e-10, 1e-10, -2e-10);
  oracle::Triplet mc, mb;
  for (int a = 0; a < 3; ++a) {
    mc[a] = m[a] * oracle::identity(2);
    mb[a] = 2.1e6 * s[a];
  }
  const CMatrix pair = oracle::dipole_pair(mc, mb, r);
  const Vec3 bd = dipole_field(m, r);
  CMatrix zeeman = CMatrix::Zero(2, 2);
  for (int a = 0; a < 3; ++a) zeeman += 2.1e6 * bd[a] * s[a];
  CHECK((pair - zeeman).norm() < 1e-12 * pair.norm());
}

TEST_CASE("CCE-1 equals the exact echo of a single frozen-coupled bath spin") {
  const IonModel eu = load_species_file(kData + "/species/eu.json");
  const IonModel y = load_species_file(kData + "/species/y.json");
  const BathGeometry g = load_bath_geometry_file(kData + "/positions/y_synthetic.csv", 1);
  const Vec3 b(60e-6, 0, 0);
  AssemblyOptions opt;
  opt.coupling = CouplingModel::kMeanDipole;
  const SystemAssembly sys = assemble_system(eu, y, g, b, opt);
  const auto delays = uniform_times(3e-3, 1e-4);
  const DecayTrace exact = hahn_echo(sys, PulseSpec::ideal(kPi / 2), PulseSpec::ideal(kPi), delays);
  const CceTrace cce = cce1_total(eu, y, g, b, delays);
  for (std::size_t k = 0; k < delays.size(); ++k) CHECK(std::abs(exact.intensity[k] - cce.total[k] * cce.total[k]) < 1e-9);

  const DecayTrace los = loschmidt_decay(sys, delays);
  const CceTrace lc = cce1_loschmidt_total(eu, y, g, b, delays);
  for (std::size_t k = 0; k < delays.size(); ++k) CHECK(std::abs(los.intensity[k] - lc.total[k]) < 1e-9);
}

TEST_CASE("frozen moments require non-degenerate addressed levels") {
  const IonModel eu = load_species_file(kData + "/species/eu.json");
  CHECK_THROWS_AS(frozen_moments(eu, Vec3::Zero()), NumericError);
  CHECK_NOTHROW(frozen_moments(eu, Vec3(1e-5, 0, 0)));
  const IonModel eu_spin = load_species_file(kData + "/species/eu.json");
  CHECK_THROWS_AS(effective_fields(eu, eu_spin, Vec3(1e-10, 0, 0), Vec3(1e-5, 0, 0)), ConfigError);
}

TEST_CASE("golden-rule rate matches the early-time slope of the ladder sum") {
  const double nu = 0.01, delta = 1.0;
  const double slope = oracle::ladder_probability(nu, delta, 2.0, 200000) -
                       oracle::ladder_probability(nu, delta, 1.0, 200000);
  CHECK(fermi_rate(nu, delta) == doctest::Approx(slope).epsilon(0.01));
  CHECK(fermi_rate(nu, delta) == doctest::Approx(2 * kPi * 1e-4));
  CHECK_THROWS_AS(fermi_rate(1.0, 0.0), DomainError);
}

TEST_CASE("frozen-spin spectrum matches the exact spectrum far from crossings") {
  const IonModel eu = load_species_file(kData + "/species/eu.json");
  const IonModel y = load_species_file(kData + "/species/y.json");
  const BathGeometry g = load_bath_geometry_file(kData + "/positions/y_synthetic.csv", 2);
  const SpectrumBranches br = frozen_spin_spectrum(eu, y, g, {Vec3(1e-4, 0, 0), Vec3(1e-3, 0, 0)});
  REQUIRE(br.exact.cols() == 24);
  // Off-diagonal couplings between hyperfine levels only shift energies at
  // second order in the (tiny) dipolar coupling.
  CHECK((br.exact - br.frozen).cwiseAbs().maxCoeff() < 1.0);
  CHECK(br.level_group.size() == 24);
  const RMatrix centered = subtract_group_means(br.exact, br.level_group);
  CHECK(centered.cwiseAbs().maxCoeff() < 1e5);
}
