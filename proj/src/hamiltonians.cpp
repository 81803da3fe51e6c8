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


#include "spinbath/hamiltonians.hpp"

#include <cmath>

#include "spinbath/spin_operators.hpp"

namespace spinbath {

namespace {

void require_kind(const IonModel& ion, IonKind kind, const char* what) {
  if (ion.kind != kind)
    throw ConfigError(std::string(what) + ": species '" + ion.species + "' is " + to_string(ion.kind));
}

// Spin vectors of a Kramers ion lifted to nuclear (x) electronic space.
struct KramersOps {
  std::array<CMatrix, 3> i, s;
};

KramersOps kramers_ops(const IonModel& ion) {
  const SpinOperators nuc = spin_operators(ion.nuclear_multiplicity);
  const SpinOperators ele = spin_operators(ion.electronic_multiplicity);
  const CMatrix id_n = CMatrix::Identity(nuc.multiplicity, nuc.multiplicity);
  const CMatrix id_e = CMatrix::Identity(ele.multiplicity, ele.multiplicity);
  KramersOps ops;
  for (int a = 0; a < 3; ++a) {
    ops.i[a] = kron(nuc.component(a), id_e);
    ops.s[a] = kron(id_n, ele.component(a));
  }
  return ops;
}

}  // namespace

CMatrix MomentOperator::along(const Vec3& n) const { return n.x() * m[0] + n.y() * m[1] + n.z() * m[2]; }

Vec3 MomentOperator::expectation(const CVector& v) const {
  Vec3 out;
  for (int a = 0; a < 3; ++a) out[a] = v.dot(m[a] * v).real();
  return out;
}

MomentOperator MomentOperator::scaled(double s) const {
  MomentOperator out = *this;
  for (auto& c : out.m) c *= s;
  return out;
}

CMatrix build_nonkramers(const IonModel& ion, const Vec3& field) {
  require_kind(ion, IonKind::kNonKramers, "build_nonkramers");
  const SpinOperators op = spin_operators(ion.nuclear_multiplicity);
  const int n = op.multiplicity;
  CMatrix h = CMatrix::Zero(n, n);
  const Vec3 bm = ion.m_hz_per_t.transpose() * field;  // (B.M)_b
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b)
      if (ion.q_hz(a, b) != 0.0) h += ion.q_hz(a, b) * (op.component(a) * op.component(b));
    h += bm[a] * op.component(a);
  }
  return h;
}

CMatrix build_kramers(const IonModel& ion, const Vec3& field) {
  require_kind(ion, IonKind::kKramers, "build_kramers");
  const KramersOps ops = kramers_ops(ion);
  const int n = ion.dimension();
  CMatrix h = CMatrix::Zero(n, n);
  const Vec3 bg = constants::kBohrMagnetonHzPerT * (ion.g.transpose() * field);
  const double nuclear = constants::kNuclearMagnetonHzPerT * ion.g_n;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b)
      if (ion.a_hz(a, b) != 0.0) h += ion.a_hz(a, b) * (ops.i[a] * ops.s[b]);
    h += bg[a] * ops.s[a] + nuclear * field[a] * ops.i[a];
  }
  return h;
}

CMatrix build_bare(const IonModel& ion, const Vec3& field) {
  require_kind(ion, IonKind::kBare, "build_bare");
  return moment_operator(ion).along(field);
}

CMatrix central_hamiltonian(const IonModel& ion, const Vec3& field) {
  switch (ion.kind) {
    case IonKind::kNonKramers:
      return build_nonkramers(ion, field);
    case IonKind::kKramers:
      return build_kramers(ion, field);
    case IonKind::kBare:
      return build_bare(ion, field);
  }
  throw ConfigError("unknown ion kind");
}

MomentOperator moment_operator(const IonModel& ion) {
  MomentOperator mo;
  switch (ion.kind) {
    case IonKind::kNonKramers: {
      const SpinOperators op = spin_operators(ion.nuclear_multiplicity);
      for (int a = 0; a < 3; ++a) {
        mo.m[a] = CMatrix::Zero(op.multiplicity, op.multiplicity);
        for (int b = 0; b < 3; ++b) mo.m[a] += ion.m_hz_per_t(a, b) * op.component(b);
      }
      break;
    }
    case IonKind::kKramers: {
      const KramersOps ops = kramers_ops(ion);
      for (int a = 0; a < 3; ++a) {
        mo.m[a] = constants::kNuclearMagnetonHzPerT * ion.g_n * ops.i[a];
        for (int b = 0; b < 3; ++b) mo.m[a] += constants::kBohrMagnetonHzPerT * ion.g(a, b) * ops.s[b];
      }
      break;
    }
    case IonKind::kBare: {
      const SpinOperators op = spin_operators(ion.nuclear_multiplicity);
      for (int a = 0; a < 3; ++a) mo.m[a] = ion.gamma_hz_per_t * op.component(a);
      break;
    }
  }
  return mo;
}

Mat3 dipolar_tensor(const Vec3& r12) {
  const double r = r12.norm();
  if (!(r > 0.0) || !std::isfinite(r)) throw GeometryError("dipolar coupling at zero or invalid separation");
  const Vec3 u = r12 / r;
  return -(constants::kDipolarPrefactor / (r * r * r)) * (3.0 * u * u.transpose() - Mat3::Identity());
}

CMatrix dipole_dipole(const MomentOperator& m1, const MomentOperator& m2, const Vec3& r12) {
  const Mat3 t = dipolar_tensor(r12);
  const int n = m1.dimension() * m2.dimension();
  CMatrix h = CMatrix::Zero(n, n);
  for (int a = 0; a < 3; ++a) {
    CMatrix m2_eff = CMatrix::Zero(m2.dimension(), m2.dimension());
    for (int b = 0; b < 3; ++b) m2_eff += t(a, b) * m2[b];
    h += kron(m1[a], m2_eff);
  }
  return h;
}

SecularTerms secular_decompose(const MomentOperator& m1, const MomentOperator& m2, const Vec3& r12,
                               const Vec3& z_axis) {
  const double r = r12.norm();
  if (!(r > 0.0) || !std::isfinite(r)) throw GeometryError("dipolar coupling at zero or invalid separation");
  const Mat3 frame = quantization_frame(z_axis.normalized());
  const auto local = [&](const MomentOperator& mo, int axis) { return mo.along(frame.col(axis)); };
  const cplx i(0.0, 1.0);
  const CMatrix z1 = local(m1, 2), z2 = local(m2, 2);
  const CMatrix p1 = local(m1, 0) + i * local(m1, 1), n1 = local(m1, 0) - i * local(m1, 1);
  const CMatrix p2 = local(m2, 0) + i * local(m2, 1), n2 = local(m2, 0) - i * local(m2, 1);

  const PolarAngles ang = polar_angles(r12, z_axis.normalized());
  const double ct = std::cos(ang.theta), st = std::sin(ang.theta);
  const cplx e1 = std::polar(1.0, -ang.phi), e2 = std::polar(1.0, -2.0 * ang.phi);
  const double pref = constants::kDipolarPrefactor / (r * r * r);
  const double axial = 1.0 - 3.0 * ct * ct;

  SecularTerms t;
  t.a = pref * axial * kron(z1, z2);
  t.b = pref * (-0.25 * axial) * (kron(p1, n2) + kron(n1, p2));
  t.c = pref * (-1.5 * st * ct) * e1 * (kron(p1, z2) + kron(z1, p2));
  t.c_dag = pref * (-1.5 * st * ct) * std::conj(e1) * (kron(n1, z2) + kron(z1, n2));
  t.d = pref * (-0.75 * st * st) * e2 * kron(p1, p2);
  t.d_dag = pref * (-0.75 * st * st) * std::conj(e2) * kron(n1, n2);
  return t;
}

Vec3 default_secular_axis(const Vec3& field) {
  const double b = field.norm();
  return b > 0.0 ? Vec3(field / b) : LabFrame::b();
}

CMatrix build_bath(const BathGeometry& geom, const IonModel& bath_ion, const Vec3& field, BathTermPolicy policy,
                   std::optional<Vec3> secular_axis) {
  const std::size_t n = geom.size();
  const int d = bath_ion.dimension();
  std::vector<int> dims(n, d);
  const int total = total_dimension(dims);
  CMatrix h = CMatrix::Zero(total, total);
  if (n == 0) return h;
  const MomentOperator mo = moment_operator(bath_ion);
  const CMatrix zeeman = central_hamiltonian(bath_ion, field);
  for (std::size_t k = 0; k < n; ++k) add_embedded(h, dims, {k}, zeeman);
  const Vec3 z_axis = secular_axis.value_or(default_secular_axis(field));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3 r = geom[j].position - geom[i].position;
      CMatrix pair;
      if (policy == BathTermPolicy::kFull) {
        pair = dipole_dipole(mo, mo, r);
      } else {
        const SecularTerms t = secular_decompose(mo, mo, r, z_axis);
        pair = t.a + t.b;
      }
      add_embedded(h, dims, {i, j}, pair);
    }
  }
  return h;
}

CMatrix rf_hamiltonian(const IonModel& ion, const Vec3& b_ac) {
  switch (ion.kind) {
    case IonKind::kNonKramers:
    case IonKind::kBare:
      return moment_operator(ion).along(b_ac);
    case IonKind::kKramers: {
      const KramersOps ops = kramers_ops(ion);
      const Vec3 bg = constants::kBohrMagnetonHzPerT * (ion.g.transpose() * b_ac);
      CMatrix h = CMatrix::Zero(ion.dimension(), ion.dimension());
      for (int a = 0; a < 3; ++a) h += bg[a] * ops.s[a];
      return h;
    }
  }
  throw ConfigError("unknown ion kind");
}

}  // namespace spinbath
