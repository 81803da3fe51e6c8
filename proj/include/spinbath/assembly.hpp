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

#include <optional>
#include <utility>
#include <vector>

#include "spinbath/geometry.hpp"
#include "spinbath/hamiltonians.hpp"
#include "spinbath/ion_model.hpp"
#include "spinbath/types.hpp"

namespace spinbath {

// Central-ion eigenlevels labeled by adiabatic continuation from an
// infinitesimal field along the field direction (ordered by energy there).
struct CentralLevels {
  RVector energies;               // Hz, label order
  CMatrix vectors;                // columns = eigenvectors, label order
  std::vector<int> group;         // zero-field degenerate group of each level

  int size() const { return static_cast<int>(energies.size()); }
  std::vector<int> group_members(int level) const;
};

// Field magnitude where continuation starts; below it levels are ordered by
// energy at the requested field directly.
inline constexpr double kContinuationSeedField = 1e-9;

CentralLevels label_central_levels(const IonModel& ion, const Vec3& field);

enum class CouplingModel {
  kFull,        // complete central-bath dipolar coupling
  kMeanDipole,  // only blocks diagonal in the central eigenbasis (frozen central spin)
};

struct AssemblyOptions {
  BathTermPolicy bath_policy = BathTermPolicy::kFlipFlop;
  CouplingModel coupling = CouplingModel::kFull;
  std::optional<Vec3> secular_axis;             // default: field direction
  double bath_polarization = 0.0;               // along the secular axis, in [-1, 1]
  std::optional<std::vector<int>> initial_levels;  // default: group of the transition's first level
};

struct SystemAssembly {
  IonModel central;
  IonModel bath_ion;
  BathGeometry geometry;
  Vec3 field = Vec3::Zero();
  AssemblyOptions options;

  std::vector<int> dims;  // central first, then bath ions nearest first
  int central_dim = 0;
  int bath_dim = 1;
  CentralLevels levels;
  std::pair<int, int> transition{0, 1};
  std::vector<int> initial_levels;

  CMatrix h_central;  // central space
  CMatrix h_bath;     // bath space
  CMatrix h0;         // H_RE (x) 1 + 1 (x) H_bath
  CMatrix h_int;      // sum_k central-bath dipolar couplings
  CMatrix rho0;
  CMatrix rho0_factor;  // V with rho0 = V V^dagger
  CMatrix mu_opt;     // (|a><b| + |b><a|) (x) 1
  CMatrix readout;    // |a><b| (x) 1; c(t) = Tr[rho(t) readout]

  int dimension() const { return static_cast<int>(h0.rows()); }
  CMatrix total() const { return h0 + h_int; }
  CVector central_state(int level) const { return levels.vectors.col(level); }
  // Transition frequency E_b - E_a of the bare central ion (Hz).
  double transition_frequency() const;
};

SystemAssembly assemble_system(const IonModel& central, const IonModel& bath_ion, const BathGeometry& geom,
                               const Vec3& field, const AssemblyOptions& options = {});

// (U^dagger (x) 1) op (U (x) 1) for a central-space unitary U, where the bath
// factor has dimension `bath_dim`.
CMatrix transform_central(const CMatrix& op, const CMatrix& u, int bath_dim);

// (A (x) 1) op for a central-space matrix A.
CMatrix apply_central_left(const CMatrix& a, const CMatrix& op, int bath_dim);

// Keeps only blocks <s| op |s> (x) bath of `op` in the central basis given by
// the columns of `basis`; returns the result in the original basis.
CMatrix central_diagonal_blocks(const CMatrix& op, const CMatrix& basis, int bath_dim);

}  // namespace spinbath
