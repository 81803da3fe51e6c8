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


// Independent reference implementations used by the tests. They share only
// the Eigen type aliases with the library and use deliberately different
// algorithms (Jacobi sweeps, Taylor exponentials, RK4, explicit sums).

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "spinbath/types.hpp"

namespace oracle {

using spinbath::cplx;
using spinbath::CMatrix;
using spinbath::CVector;
using spinbath::Mat3;
using spinbath::Vec3;

using Triplet = std::array<CMatrix, 3>;

// Eigenvalues (ascending) of a Hermitian matrix by cyclic Jacobi rotations
// on its real symmetric 2n x 2n embedding.
std::vector<double> hermitian_eigenvalues(const CMatrix& h);

// Spin matrices from the textbook ladder-operator matrix elements, basis
// m = I, I-1, ..., -I.
Triplet spin_matrices(int multiplicity);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix identity(int n);

// Operator acting as `op` on factor `slot` of a product space.
CMatrix on_slot(const std::vector<int>& dims, int slot, const CMatrix& op);

// sum_b t(a, b) ops[b] for each a.
Triplet contract(const Mat3& t, const Triplet& ops);

// mu0 h / (4 pi) in SI units.
double dipolar_constant();

// Magnetic dipole-dipole energy (Hz) written as
// mu0 h / (4 pi r^3) [m1.m2 - 3 (m1.u)(m2.u)] for moments in Hz/T.
CMatrix dipole_pair(const Triplet& m1, const Triplet& m2, const Vec3& r12);

// exp(-i 2 pi H t) by scaling and squaring of a Taylor series.
CMatrix propagator(const CMatrix& h, double t);

// Classical RK4 for d psi / dt = -i 2 pi H(t) psi.
CVector rk4(const std::function<CMatrix(double)>& h, CVector psi, double t0, double t1, int steps);

// Golden-rule ladder sum 4 nu^2 sum_{|k| <= K} sin^2(k delta t / 2) / (k delta)^2
// (angular units, the k = 0 term is its limit nu^2 t^2).
double ladder_probability(double nu, double delta, double t, int k_max);

// Spin-1/2 Hahn-type echo Tr[e^{-iH-t} e^{-iH+t} e^{iH-t} e^{iH+t}] / 2 for
// H_pm = gamma b_pm . sigma / 2 (Hz), using the closed-form SU(2) exponential.
cplx spin_half_echo(const Vec3& b_minus, const Vec3& b_plus, double gamma, double t);

// Hellmann-Feynman derivative <v| dH |v> for a normalized eigenvector.
double expectation(const CMatrix& op, const CVector& v);

}  // namespace oracle
