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


#include "spinbath/gradient.hpp"

#include <algorithm>
#include <cmath>

#include "spinbath/assembly.hpp"
#include "spinbath/dynamics.hpp"
#include "spinbath/hamiltonians.hpp"

namespace spinbath {

double gradient_step(const Vec3& field) { return std::max(1e-4 * field.norm(), 1e-7); }

namespace {

// Energy of the eigenstate of H(field) with the largest overlap with `ref`.
double tracked_energy(const IonModel& ion, const Vec3& field, const CVector& ref) {
  const EigenSystem e = diagonalize(central_hamiltonian(ion, field));
  const RVector ov = (e.vectors.adjoint() * ref).cwiseAbs();
  Eigen::Index best = 0;
  const double top = ov.maxCoeff(&best);
  if (top * top < 0.5)
    throw NumericError("transition gradient undefined: level crossing within the finite-difference stencil");
  return e.values[best];
}

}  // namespace

Vec3 transition_gradient_vector(const IonModel& ion, const Vec3& field, std::pair<int, int> transition) {
  const auto [a, b] = transition;
  if (a < 0 || b < 0 || a >= ion.dimension() || b >= ion.dimension() || a == b)
    throw ParameterError("transition gradient: invalid transition");
  const CentralLevels lv = label_central_levels(ion, field);
  const CVector va = lv.vectors.col(a), vb = lv.vectors.col(b);
  const double h = gradient_step(field);
  Vec3 g;
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 d = Vec3::Zero();
    d[axis] = h;
    const double fp = tracked_energy(ion, field + d, vb) - tracked_energy(ion, field + d, va);
    const double fm = tracked_energy(ion, field - d, vb) - tracked_energy(ion, field - d, va);
    g[axis] = (fp - fm) / (2.0 * h);
  }
  return g;
}

TransitionGradient transition_gradient(const IonModel& ion, const Vec3& field, std::pair<int, int> transition) {
  TransitionGradient tg;
  tg.site1 = transition_gradient_vector(ion, field, transition);
  tg.site2 = transition_gradient_vector(ion.subsite_image(), field, transition);
  tg.norm1 = tg.site1.norm();
  tg.norm2 = tg.site2.norm();
  tg.mean_norm = 0.5 * (tg.norm1 + tg.norm2);
  return tg;
}

}  // namespace spinbath
