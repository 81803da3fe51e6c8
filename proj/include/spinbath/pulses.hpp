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

#include "spinbath/assembly.hpp"
#include "spinbath/types.hpp"

namespace spinbath {

enum class PulseKind { kIdealRotation, kAdiabaticChirp };

// An adiabatic pulse either stops at the sweep center (half passage, which
// leaves an equal superposition) or sweeps through (full passage, inversion).
enum class Passage { kHalf, kFull };

struct PulseSpec {
  PulseKind kind = PulseKind::kIdealRotation;
  double angle = kPi / 2.0;        // ideal rotation angle (rad)
  double fwhm_s = 200e-6;          // FWHM of the sech amplitude envelope
  double chirp_span_hz = 50e3;     // total frequency sweep
  double peak_rabi_hz = 20e3;      // Rabi frequency on the addressed pair at the peak
  std::optional<double> center_hz;  // default: addressed transition frequency
  Passage passage = Passage::kHalf;
  std::optional<Vec3> rf_axis;      // default: lab axis with the strongest matrix element
  double tolerance = 1e-8;          // step-halving convergence target (max abs amplitude change)
  int max_refinements = 12;

  static PulseSpec ideal(double angle);
  static PulseSpec adiabatic(double fwhm_s, double chirp_span_hz, double peak_rabi_hz, Passage passage);
  // Throws ParameterError when a field is out of domain.
  void validate() const;
  // sech envelope time constant T0 = FWHM / (2 acosh 2).
  double time_constant() const;
};

struct PulseStats {
  int steps = 0;            // outer steps of the converged integration
  double difference = 0.0;  // change at the last refinement
};

// Central-space rotation exp(-i angle sigma^x_ab / 2) on the addressed pair,
// written in the lab basis of the central ion.
CMatrix ideal_rotation(const SystemAssembly& sys, double angle);

// Applies the pulse to a set of state vectors (columns) of the joint space.
CMatrix apply_pulse_columns(const SystemAssembly& sys, const PulseSpec& pulse, const CMatrix& columns,
                            PulseStats* stats = nullptr);

// Full joint-space unitary of the pulse.
CMatrix pulse_unitary(const SystemAssembly& sys, const PulseSpec& pulse, PulseStats* stats = nullptr);

// rho -> U rho U^dagger.
CMatrix apply_pulse(const CMatrix& rho, const PulseSpec& pulse, const SystemAssembly& sys);

// Factor V with rho = V V^dagger (columns with negligible weight dropped).
CMatrix density_factor(const CMatrix& rho);

// Lab axis (D1, D2 or b) maximizing the drive matrix element on the pair.
Vec3 default_rf_axis(const SystemAssembly& sys);

}  // namespace spinbath
