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


#include "spinbath/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spinbath/dynamics.hpp"
#include "spinbath/spin_operators.hpp"

namespace spinbath {

std::vector<int> CentralLevels::group_members(int level) const {
  std::vector<int> out;
  for (int k = 0; k < size(); ++k)
    if (group[static_cast<std::size_t>(k)] == group[static_cast<std::size_t>(level)]) out.push_back(k);
  return out;
}

namespace {

// Greedy maximum-overlap matching of `next` eigenvectors to `prev` labels.
// Returns next's columns reordered and phase-aligned to prev.
void match_levels(const CMatrix& prev, const EigenSystem& next, RVector& energies, CMatrix& vectors) {
  const int n = static_cast<int>(prev.cols());
  const RMatrix overlap = (prev.adjoint() * next.vectors).cwiseAbs();
  std::vector<bool> used_prev(n, false), used_next(n, false);
  std::vector<int> assign(n, -1);
  for (int round = 0; round < n; ++round) {
    double best = -1.0;
    int bp = -1, bn = -1;
    for (int p = 0; p < n; ++p) {
      if (used_prev[p]) continue;
      for (int q = 0; q < n; ++q) {
        if (used_next[q]) continue;
        if (overlap(p, q) > best) {
          best = overlap(p, q);
          bp = p;
          bn = q;
        }
      }
    }
    used_prev[bp] = used_next[bn] = true;
    assign[bp] = bn;
  }
  energies.resize(n);
  vectors.resize(n, n);
  for (int p = 0; p < n; ++p) {
    CVector v = next.vectors.col(assign[p]);
    const cplx ov = prev.col(p).dot(v);
    if (std::abs(ov) > 0.0) v *= std::conj(ov) / std::abs(ov);
    energies[p] = next.values[assign[p]];
    vectors.col(p) = v;
  }
}

std::vector<int> zero_field_groups(const IonModel& ion) {
  const EigenSystem e0 = diagonalize(central_hamiltonian(ion, Vec3::Zero()));
  const int n = e0.dimension();
  std::vector<int> group(n, 0);
  const double spread = n > 0 ? e0.values[n - 1] - e0.values[0] : 0.0;
  const double tol = 1e-6 * spread + 1e-3;
  for (int k = 1; k < n; ++k) group[k] = group[k - 1] + (e0.values[k] - e0.values[k - 1] > tol ? 1 : 0);
  return group;
}

}  // namespace

CentralLevels label_central_levels(const IonModel& ion, const Vec3& field) {
  CentralLevels lv;
  lv.group = zero_field_groups(ion);
  const double b = field.norm();
  if (b <= kContinuationSeedField) {
    const EigenSystem e = diagonalize(central_hamiltonian(ion, field));
    lv.energies = e.values;
    lv.vectors = e.vectors;
    return lv;
  }
  const Vec3 dir = field / b;
  EigenSystem seed = diagonalize(central_hamiltonian(ion, kContinuationSeedField * dir));
  RVector energies = seed.values;
  CMatrix vectors = seed.vectors;
  const double ratio_max = 1.1;
  const int steps = static_cast<int>(std::ceil(std::log(b / kContinuationSeedField) / std::log(ratio_max)));
  const double ratio = std::pow(b / kContinuationSeedField, 1.0 / steps);
  for (int k = 1; k <= steps; ++k) {
    const double bk = k == steps ? b : kContinuationSeedField * std::pow(ratio, k);
    const EigenSystem e = diagonalize(central_hamiltonian(ion, bk * dir));
    RVector ne;
    CMatrix nv;
    match_levels(vectors, e, ne, nv);
    energies = ne;
    vectors = nv;
  }
  lv.energies = energies;
  lv.vectors = vectors;
  return lv;
}

double SystemAssembly::transition_frequency() const {
  return levels.energies[transition.second] - levels.energies[transition.first];
}

CMatrix apply_central_left(const CMatrix& a, const CMatrix& op, int bath_dim) {
  const int dc = static_cast<int>(a.rows());
  if (op.rows() != dc * bath_dim) throw DomainError("apply_central_left: dimension mismatch");
  CMatrix out = CMatrix::Zero(op.rows(), op.cols());
  for (int s = 0; s < dc; ++s)
    for (int u = 0; u < dc; ++u)
      if (a(s, u) != cplx(0.0, 0.0))
        out.middleRows(s * bath_dim, bath_dim) += a(s, u) * op.middleRows(u * bath_dim, bath_dim);
  return out;
}

CMatrix transform_central(const CMatrix& op, const CMatrix& u, int bath_dim) {
  const int dc = static_cast<int>(u.rows());
  const CMatrix left = apply_central_left(u.adjoint(), op, bath_dim);
  CMatrix out = CMatrix::Zero(op.rows(), op.cols());
  for (int t = 0; t < dc; ++t)
    for (int s = 0; s < dc; ++s)
      if (u(s, t) != cplx(0.0, 0.0))
        out.middleCols(t * bath_dim, bath_dim) += u(s, t) * left.middleCols(s * bath_dim, bath_dim);
  return out;
}

CMatrix central_diagonal_blocks(const CMatrix& op, const CMatrix& basis, int bath_dim) {
  const int dc = static_cast<int>(basis.rows());
  const CMatrix in_basis = transform_central(op, basis, bath_dim);
  CMatrix diag = CMatrix::Zero(op.rows(), op.cols());
  for (int s = 0; s < dc; ++s)
    diag.block(s * bath_dim, s * bath_dim, bath_dim, bath_dim) =
        in_basis.block(s * bath_dim, s * bath_dim, bath_dim, bath_dim);
  return transform_central(diag, basis.adjoint(), bath_dim);
}

SystemAssembly assemble_system(const IonModel& central, const IonModel& bath_ion, const BathGeometry& geom,
                               const Vec3& field, const AssemblyOptions& options) {
  central.validate();
  bath_ion.validate();
  if (!field.allFinite()) throw DomainError("assemble_system: non-finite field");
  SystemAssembly sys;
  sys.central = central;
  sys.bath_ion = bath_ion;
  sys.geometry = geom;
  sys.field = field;
  sys.options = options;
  sys.central_dim = central.dimension();
  sys.dims.push_back(sys.central_dim);
  for (std::size_t k = 0; k < geom.size(); ++k) sys.dims.push_back(bath_ion.dimension());
  sys.bath_dim = 1;
  for (std::size_t k = 0; k < geom.size(); ++k) sys.bath_dim *= bath_ion.dimension();
  const int dc = sys.central_dim, db = sys.bath_dim, n = dc * db;

  sys.levels = label_central_levels(central, field);
  sys.transition = central.transition;
  const auto [a, b] = sys.transition;
  if (a < 0 || b < 0 || a >= dc || b >= dc || a == b) throw ConfigError("assemble_system: invalid transition");
  sys.initial_levels = options.initial_levels.value_or(sys.levels.group_members(a));
  if (sys.initial_levels.empty()) throw ConfigError("assemble_system: empty initial level set");
  for (int s : sys.initial_levels)
    if (s < 0 || s >= dc) throw ConfigError("assemble_system: initial level out of range");

  sys.h_central = central_hamiltonian(central, field);
  sys.h_bath = build_bath(geom, bath_ion, field, options.bath_policy, options.secular_axis);
  const CMatrix id_c = CMatrix::Identity(dc, dc), id_b = CMatrix::Identity(db, db);
  sys.h0 = kron(sys.h_central, id_b) + kron(id_c, sys.h_bath);

  sys.h_int = CMatrix::Zero(n, n);
  const MomentOperator mc = moment_operator(central);
  const MomentOperator mb = moment_operator(bath_ion);
  for (std::size_t k = 0; k < geom.size(); ++k) {
    const CMatrix pair = dipole_dipole(mc, mb, geom[k].position);
    add_embedded(sys.h_int, sys.dims, {0, k + 1}, pair);
  }
  if (options.coupling == CouplingModel::kMeanDipole)
    sys.h_int = central_diagonal_blocks(sys.h_int, sys.levels.vectors, db);

  // Bath state: product of identical single-spin states.
  const double p = options.bath_polarization;
  if (!(std::abs(p) <= 1.0)) throw ConfigError("assemble_system: bath polarization must lie in [-1, 1]");
  const int d1 = bath_ion.dimension();
  CMatrix rho_spin = CMatrix::Identity(d1, d1) / static_cast<double>(d1);
  if (p != 0.0) {
    if (d1 != 2) throw ConfigError("assemble_system: bath polarization requires spin-1/2 bath ions");
    const SpinOperators op = spin_operators(2);
    const Vec3 axis = options.secular_axis.value_or(default_secular_axis(field)).normalized();
    rho_spin += p * (axis.x() * op.ix + axis.y() * op.iy + axis.z() * op.iz);
  }
  const EigenSystem spin_eig = diagonalize(rho_spin);
  CMatrix spin_factor = spin_eig.vectors * spin_eig.values.cwiseMax(0.0).cwiseSqrt().cast<cplx>().asDiagonal();
  CMatrix rho_bath = CMatrix::Identity(1, 1), bath_factor = CMatrix::Identity(1, 1);
  for (std::size_t k = 0; k < geom.size(); ++k) {
    rho_bath = kron(rho_bath, rho_spin);
    bath_factor = kron(bath_factor, spin_factor);
  }

  CMatrix rho_c = CMatrix::Zero(dc, dc);
  for (int s : sys.initial_levels) rho_c += sys.levels.vectors.col(s) * sys.levels.vectors.col(s).adjoint();
  rho_c /= static_cast<double>(sys.initial_levels.size());
  sys.rho0 = kron(rho_c, rho_bath);
  CMatrix central_factor(dc, static_cast<Eigen::Index>(sys.initial_levels.size()));
  for (std::size_t j = 0; j < sys.initial_levels.size(); ++j)
    central_factor.col(static_cast<Eigen::Index>(j)) =
        sys.levels.vectors.col(sys.initial_levels[j]) / std::sqrt(static_cast<double>(sys.initial_levels.size()));
  sys.rho0_factor = kron(central_factor, bath_factor);

  const CVector va = sys.levels.vectors.col(a), vb = sys.levels.vectors.col(b);
  const CMatrix ab = va * vb.adjoint();
  sys.readout = kron(ab, id_b);
  sys.mu_opt = kron(CMatrix(ab + ab.adjoint()), id_b);
  return sys;
}

}  // namespace spinbath
