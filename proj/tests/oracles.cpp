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


#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

namespace {
constexpr double kPi = 3.14159265358979323846;
// CODATA 2018 vacuum permeability over 4 pi, times the Planck constant.
const double kC0 = 1.25663706212e-6 / (4.0 * 3.14159265358979323846) * 6.62607015e-34;
}  // namespace

std::vector<double> hermitian_eigenvalues(const CMatrix& h) {
  const int n = static_cast<int>(h.rows());
  const int m = 2 * n;
  // [[Re, -Im], [Im, Re]] has each eigenvalue of h twice.
  std::vector<double> a(static_cast<std::size_t>(m * m));
  const auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i * m + j)]; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      at(i, j) = h(i, j).real();
      at(i + n, j + n) = h(i, j).real();
      at(i, j + n) = -h(i, j).imag();
      at(i + n, j) = h(i, j).imag();
    }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, total = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        total += at(i, j) * at(i, j);
        if (i != j) off += at(i, j) * at(i, j);
      }
    if (off <= 1e-30 * total) break;
    for (int p = 0; p < m - 1; ++p)
      for (int q = p + 1; q < m; ++q) {
        if (at(p, q) == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < m; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < m; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev;
  for (int i = 0; i < m; ++i) ev.push_back(at(i, i));
  std::sort(ev.begin(), ev.end());
  std::vector<double> out;
  for (int i = 0; i < m; i += 2) out.push_back(0.5 * (ev[static_cast<std::size_t>(i)] + ev[static_cast<std::size_t>(i) + 1]));
  return out;
}

Triplet spin_matrices(int multiplicity) {
  const double s = 0.5 * (multiplicity - 1);
  CMatrix x = CMatrix::Zero(multiplicity, multiplicity), y = x, z = x;
  for (int r = 0; r < multiplicity; ++r) {
    const double m = s - r;
    z(r, r) = m;
    if (r + 1 < multiplicity) {
      // <m| I+ |m - 1> = sqrt(s (s + 1) - m (m - 1))
      const double lad = std::sqrt(s * (s + 1) - m * (m - 1));
      x(r, r + 1) = 0.5 * lad;
      x(r + 1, r) = 0.5 * lad;
      y(r, r + 1) = cplx(0, -0.5 * lad);
      y(r + 1, r) = cplx(0, 0.5 * lad);
    }
  }
  return {x, y, z};
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

CMatrix identity(int n) { return CMatrix::Identity(n, n); }

CMatrix on_slot(const std::vector<int>& dims, int slot, const CMatrix& op) {
  CMatrix out = identity(1);
  for (int i = 0; i < static_cast<int>(dims.size()); ++i)
    out = kron(out, i == slot ? op : identity(dims[static_cast<std::size_t>(i)]));
  return out;
}

Triplet contract(const Mat3& t, const Triplet& ops) {
  Triplet out;
  for (int a = 0; a < 3; ++a) {
    out[a] = CMatrix::Zero(ops[0].rows(), ops[0].cols());
    for (int b = 0; b < 3; ++b) out[a] += t(a, b) * ops[b];
  }
  return out;
}

double dipolar_constant() { return kC0; }

CMatrix dipole_pair(const Triplet& m1, const Triplet& m2, const Vec3& r12) {
  const double r = r12.norm();
  const Vec3 u = r12 / r;
  const int d1 = static_cast<int>(m1[0].rows()), d2 = static_cast<int>(m2[0].rows());
  CMatrix dot = CMatrix::Zero(d1 * d2, d1 * d2);
  for (int a = 0; a < 3; ++a) dot += kron(m1[a], m2[a]);
  CMatrix u1 = CMatrix::Zero(d1, d1), u2 = CMatrix::Zero(d2, d2);
  for (int a = 0; a < 3; ++a) {
    u1 += u[a] * m1[a];
    u2 += u[a] * m2[a];
  }
  return kC0 / (r * r * r) * (dot - 3.0 * kron(u1, u2));
}

CMatrix propagator(const CMatrix& h, double t) {
  const CMatrix a = cplx(0, -2.0 * kPi * t) * h;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  const CMatrix x = a * scale;
  CMatrix term = identity(static_cast<int>(h.rows())), sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

CVector rk4(const std::function<CMatrix(double)>& h, CVector psi, double t0, double t1, int steps) {
  const double dt = (t1 - t0) / steps;
  const cplx f(0, -2.0 * kPi);
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * dt;
    const CMatrix h0 = h(t), hm = h(t + 0.5 * dt), h1 = h(t + dt);
    const CVector k1 = f * (h0 * psi);
    const CVector k2 = f * (hm * (psi + 0.5 * dt * k1));
    const CVector k3 = f * (hm * (psi + 0.5 * dt * k2));
    const CVector k4 = f * (h1 * (psi + dt * k3));
    psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

double ladder_probability(double nu, double delta, double t, int k_max) {
  double p = nu * nu * t * t;
  for (int k = 1; k <= k_max; ++k) {
    const double x = k * delta;
    p += 2.0 * 4.0 * nu * nu * std::pow(std::sin(0.5 * x * t), 2) / (x * x);
  }
  return p;
}

cplx spin_half_echo(const Vec3& b_minus, const Vec3& b_plus, double gamma, double t) {
  // exp(-i 2 pi (gamma/2) t b.sigma) = cos(phi) 1 - i sin(phi) n.sigma, phi = pi gamma |b| t.
  using M2 = Eigen::Matrix2cd;
  M2 sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, cplx(0, -1), cplx(0, 1), 0;
  sz << 1, 0, 0, -1;
  const auto u = [&](const Vec3& b, double tt) {
    const double bn = b.norm();
    if (bn == 0.0) return M2(M2::Identity());
    const Vec3 n = b / bn;
    const double phi = kPi * gamma * bn * tt;
    return M2(std::cos(phi) * M2::Identity() - cplx(0, std::sin(phi)) * (n.x() * sx + n.y() * sy + n.z() * sz));
  };
  const M2 prod = u(b_minus, t) * u(b_plus, t) * u(b_minus, -t) * u(b_plus, -t);
  return 0.5 * prod.trace();
}

double expectation(const CMatrix& op, const CVector& v) { return v.dot(op * v).real(); }

}  // namespace oracle
