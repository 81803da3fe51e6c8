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

#include <utility>

#include "spinbath/ion_model.hpp"
#include "spinbath/types.hpp"

namespace spinbath {

// Finite-difference step used at field B: max(1e-4 |B|, 0.1 uT).
double gradient_step(const Vec3& field);

// Gradient (Hz/T) of the transition frequency E_b - E_a with respect to the
// field vector, by central differences with overlap-tracked levels. Throws
// NumericError when a level crossing inside the stencil breaks the tracking.
Vec3 transition_gradient_vector(const IonModel& ion, const Vec3& field, std::pair<int, int> transition);

struct TransitionGradient {
  Vec3 site1 = Vec3::Zero();
  Vec3 site2 = Vec3::Zero();
  double norm1 = 0.0;
  double norm2 = 0.0;
  double mean_norm = 0.0;  // average over the two magnetic subsites
};

TransitionGradient transition_gradient(const IonModel& ion, const Vec3& field, std::pair<int, int> transition);

}  // namespace spinbath
