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

#include "spinbath/assembly.hpp"
#include "spinbath/geometry.hpp"
#include "spinbath/ion_model.hpp"
#include "spinbath/types.hpp"

namespace spinbath {

// Mean central moments <a|m|a> ("minus") and <b|m|b> ("plus") of the
// addressed levels in the field-dressed eigenbasis (Hz/T).
struct FrozenMoments {
  Vec3 minus = Vec3::Zero();
  Vec3 plus = Vec3::Zero();
};

// Throws NumericError when an addressed level is degenerate at `field`
// (the mean moment is then ill-defined and the frozen-spin picture invalid).
FrozenMoments frozen_moments(const IonModel& central, const Vec3& field);

// Field seen by a moment at offset r from a classical moment m (Hz/T), in
// the sign convention H = B.m of this library: (T m) with T the dipolar
// tensor. Tesla.
Vec3 dipole_field(const Vec3& moment_hz_per_t, const Vec3& r);

struct EffectiveFieldPair {
  Vec3 b_minus = Vec3::Zero();
  Vec3 b_plus = Vec3::Zero();
  double theta = 0.0;        // angle between the two fields
  double delta_minus = 0.0;  // gamma |b_minus| (Hz)
  double delta_plus = 0.0;
};

// Requires a bare spin-1/2 bath ion. Throws ConfigError otherwise.
EffectiveFieldPair effective_fields(const FrozenMoments& moments, const IonModel& bath_ion, const Vec3& position,
                                    const Vec3& field);
EffectiveFieldPair effective_fields(const IonModel& central, const IonModel& bath_ion, const Vec3& position,
                                    const Vec3& field);

// Closed-form single-cluster Hahn echo for a mixed spin-1/2 (echo time 2t):
// 1 - (sin^2 theta / 2)(1 - cos 2pi D- t)(1 - cos 2pi D+ t).
std::vector<double> cce1_cluster(const EffectiveFieldPair& pair, const std::vector<double>& times);

// Tr[rho e^{-iH- t} e^{-iH+ t} e^{iH- t} e^{iH+ t}] (2 pi factors implied)
// from 2x2 exponentials, with H+- the bath Zeeman Hamiltonian conditioned on
// the central level.
std::vector<cplx> brute_cluster_echo(const FrozenMoments& moments, const IonModel& bath_ion, const Vec3& position,
                                     const Vec3& field, const std::vector<double>& times);

// Single-cluster overlap (no refocusing) Tr[rho e^{iH- t} e^{-iH+ t}].
std::vector<cplx> loschmidt_cluster(const FrozenMoments& moments, const IonModel& bath_ion, const Vec3& position,
                                    const Vec3& field, const std::vector<double>& times);

struct CceTrace {
  std::vector<double> times;
  std::vector<std::vector<double>> clusters;  // E_k(t)
  std::vector<double> total;                  // prod_k E_k(t)
};

CceTrace cce1_total(const IonModel& central, const IonModel& bath_ion, const BathGeometry& geom, const Vec3& field,
                    const std::vector<double>& times);

// Product of single-cluster overlap intensities |L_k(t)|^2.
CceTrace cce1_loschmidt_total(const IonModel& central, const IonModel& bath_ion, const BathGeometry& geom,
                              const Vec3& field, const std::vector<double>& times);

// Golden-rule transition rate 2 pi nu^2 / delta for a coupling nu to a
// uniform ladder of spacing delta. nu and delta in angular units (rad/s)
// give a rate in 1/s. Throws DomainError for delta <= 0.
double fermi_rate(double nu, double delta);

// Eigenvalues of H0 + H_int with the full coupling ("exact") and with only
// its central-diagonal blocks ("frozen"), one row per field.
struct SpectrumBranches {
  std::vector<Vec3> fields;
  RMatrix exact;
  RMatrix frozen;
  std::vector<int> level_group;  // hyperfine group of each sorted eigenvalue (by dominant central level, last field)
};

SpectrumBranches frozen_spin_spectrum(const IonModel& central, const IonModel& bath_ion, const BathGeometry& geom,
                                      const std::vector<Vec3>& fields, const AssemblyOptions& options = {});

// Display transform: subtract, per row, the mean of each hyperfine group.
RMatrix subtract_group_means(const RMatrix& values, const std::vector<int>& group);

void write_branches_csv(std::ostream& out, const SpectrumBranches& br);

}  // namespace spinbath
