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

#include <array>
#include <optional>

#include "spinbath/geometry.hpp"
#include "spinbath/ion_model.hpp"
#include "spinbath/types.hpp"

namespace spinbath {

// Magnetic moment (m^x, m^y, m^z) of one ion in its own spin space, Hz/T.
struct MomentOperator {
  std::array<CMatrix, 3> m;

  int dimension() const { return static_cast<int>(m[0].rows()); }
  const CMatrix& operator[](int axis) const { return m[static_cast<std::size_t>(axis)]; }
  // sum_a n_a m^a
  CMatrix along(const Vec3& n) const;
  // Expectation value <v| m |v> as a real 3-vector (Hz/T).
  Vec3 expectation(const CVector& v) const;
  MomentOperator scaled(double s) const;
};

// I.Q.I + B.M.I (Hz). Throws ConfigError for a non non-Kramers model.
CMatrix build_nonkramers(const IonModel& ion, const Vec3& field);
// I.A.S + muB B.g.S + muN gn B.I on the nuclear (x) electronic space (Hz).
CMatrix build_kramers(const IonModel& ion, const Vec3& field);
// gamma B.I (Hz).
CMatrix build_bare(const IonModel& ion, const Vec3& field);
// Dispatches on the ion kind.
CMatrix central_hamiltonian(const IonModel& ion, const Vec3& field);

MomentOperator moment_operator(const IonModel& ion);

// Coupling tensor T with H_dd = sum_ab T_ab m1^a (x) m2^b, in Hz / (Hz/T)^2.
// Throws GeometryError for a zero separation.
Mat3 dipolar_tensor(const Vec3& r12);

// Dipole-dipole Hamiltonian on the pair space (ion 1 most significant).
CMatrix dipole_dipole(const MomentOperator& m1, const MomentOperator& m2, const Vec3& r12);

// Secular ("dipolar alphabet") decomposition about `z_axis`.
struct SecularTerms {
  CMatrix a, b, c, c_dag, d, d_dag;
  CMatrix sum() const { return a + b + c + c_dag + d + d_dag; }
};
SecularTerms secular_decompose(const MomentOperator& m1, const MomentOperator& m2, const Vec3& r12,
                               const Vec3& z_axis);

enum class BathTermPolicy {
  kFull,      // complete bath-bath dipolar coupling
  kFlipFlop,  // z-coupling and flip-flop terms only
};

// Secular axis used for the flip-flop truncation: the field direction, or b
// when the field vanishes.
Vec3 default_secular_axis(const Vec3& field);

// Bath Hamiltonian on the product space of all bath ions (nearest first):
// Zeeman terms plus bath-bath dipolar couplings under `policy`.
CMatrix build_bath(const BathGeometry& geom, const IonModel& bath_ion, const Vec3& field,
                   BathTermPolicy policy, std::optional<Vec3> secular_axis = std::nullopt);

// Drive generator on the central space: B_AC.M.I (non-Kramers),
// muB B_AC.g.S (Kramers) or gamma B_AC.I (bare).
CMatrix rf_hamiltonian(const IonModel& ion, const Vec3& b_ac);

}  // namespace spinbath
