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

#include "spinbath/spin_operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spinbath {

const CMatrix& SpinOperators::component(int axis) const {
  switch (axis) {
    case 0:
      return ix;
    case 1:
      return iy;
    case 2:
      return iz;
    default:
      throw DomainError("spin component axis must be 0, 1 or 2");
  }
}

SpinOperators spin_operators(int multiplicity) {
  if (multiplicity < 2) throw DomainError("spin multiplicity must be >= 2");
  const int n = multiplicity;
  const double s = 0.5 * (n - 1);
  SpinOperators ops;
  ops.multiplicity = n;
  ops.iz = CMatrix::Zero(n, n);
  ops.iplus = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double m = s - k;
    ops.iz(k, k) = m;
    // I+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>; |m+1> sits at index k-1.
    if (k > 0) ops.iplus(k - 1, k) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  ops.iminus = ops.iplus.adjoint();
  ops.ix = 0.5 * (ops.iplus + ops.iminus);
  ops.iy = cplx(0.0, -0.5) * (ops.iplus - ops.iminus);
  return ops;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

int total_dimension(const std::vector<int>& dims) {
  int n = 1;
  for (int d : dims) n *= d;
  return n;
}

CMatrix embed(const std::vector<int>& dims,
              const std::vector<std::pair<std::size_t, const CMatrix*>>& factors) {
  for (const auto& [slot, op] : factors) {
    if (slot >= dims.size()) throw DomainError("embed: slot out of range");
    if (op->rows() != dims[slot] || op->cols() != dims[slot])
      throw DomainError("embed: factor dimension does not match its slot");
  }
  // Group consecutive identity slots so each kron step is as large as possible.
  CMatrix out = CMatrix::Identity(1, 1);
  int pending_identity = 1;
  for (std::size_t slot = 0; slot < dims.size(); ++slot) {
    const auto it = std::find_if(factors.begin(), factors.end(),
                                 [slot](const auto& f) { return f.first == slot; });
    if (it == factors.end()) {
      pending_identity *= dims[slot];
      continue;
    }
    if (pending_identity > 1) {
      out = kron(out, CMatrix::Identity(pending_identity, pending_identity));
      pending_identity = 1;
    }
    out = kron(out, *it->second);
  }
  if (pending_identity > 1) out = kron(out, CMatrix::Identity(pending_identity, pending_identity));
  return out;
}

void add_embedded(CMatrix& target, const std::vector<int>& dims, const std::vector<std::size_t>& slots,
                  const CMatrix& local, cplx scale) {
  const int n = total_dimension(dims);
  if (target.rows() != n || target.cols() != n) throw DomainError("add_embedded: target dimension mismatch");
  std::vector<int> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
  int local_dim = 1;
  for (std::size_t s : slots) {
    if (s >= dims.size()) throw DomainError("add_embedded: slot out of range");
    local_dim *= dims[s];
  }
  if (local.rows() != local_dim || local.cols() != local_dim)
    throw DomainError("add_embedded: local operator dimension mismatch");
  // Offset in the full space of each local basis state.
  std::vector<int> offset(local_dim, 0);
  for (int l = 0; l < local_dim; ++l) {
    int rem = l;
    for (std::size_t k = slots.size(); k-- > 0;) {
      const int d = dims[slots[k]];
      offset[l] += (rem % d) * strides[slots[k]];
      rem /= d;
    }
  }
  for (int col = 0; col < n; ++col) {
    int l = 0;
    int base = col;
    for (std::size_t s : slots) {
      const int digit = (col / strides[s]) % dims[s];
      l = l * dims[s] + digit;
      base -= digit * strides[s];
    }
    for (int lp = 0; lp < local_dim; ++lp) {
      const cplx v = local(lp, l);
      if (v != cplx(0.0, 0.0)) target(base + offset[lp], col) += scale * v;
    }
  }
}

double hermiticity_defect(const CMatrix& a) {
  const double norm = std::max(a.norm(), std::numeric_limits<double>::min());
  return (a - a.adjoint()).norm() / norm;
}

}  // namespace spinbath
