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
#include <utility>
#include <vector>

#include "spinbath/types.hpp"

namespace spinbath {

// Angular momentum matrices for spin I = (multiplicity - 1) / 2 in the |I, m>
// basis ordered m = I, I-1, ..., -I.
struct SpinOperators {
  int multiplicity = 0;
  CMatrix ix, iy, iz, iplus, iminus;

  double spin() const { return 0.5 * (multiplicity - 1); }
  const CMatrix& component(int axis) const;
  std::array<CMatrix, 3> vector() const { return {ix, iy, iz}; }
};

// Throws DomainError for multiplicity < 2.
SpinOperators spin_operators(int multiplicity);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Tensor product over subsystems of dimensions `dims`, with the given factors
// placed at their slots and identities elsewhere. Slots must be distinct.
CMatrix embed(const std::vector<int>& dims,
              const std::vector<std::pair<std::size_t, const CMatrix*>>& factors);

inline CMatrix embed(const std::vector<int>& dims, std::size_t slot, const CMatrix& op) {
  return embed(dims, {{slot, &op}});
}

int total_dimension(const std::vector<int>& dims);

// target += scale * (local operator acting on `slots`, identity elsewhere).
// `local` acts on the ordered product space of the listed slots (first slot
// most significant). Cheaper than `embed` for large spaces: O(dim * local^2).
void add_embedded(CMatrix& target, const std::vector<int>& dims, const std::vector<std::size_t>& slots,
                  const CMatrix& local, cplx scale = 1.0);

// ||A - A^dagger|| / max(||A||, tiny); Frobenius norms.
double hermiticity_defect(const CMatrix& a);

}  // namespace spinbath
