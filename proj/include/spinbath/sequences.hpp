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

#include <ostream>
#include <string>
#include <vector>

#include "spinbath/assembly.hpp"
#include "spinbath/dynamics.hpp"
#include "spinbath/pulses.hpp"

namespace spinbath {

// Coherence created by `pulse` from rho0, then free evolution under
// H0 + H_int; I(t) normalized to the first sample.
DecayTrace fid_decay(const SystemAssembly& sys, const PulseSpec& pulse, const std::vector<double>& times);

// Variant reusing a precomputed diagonalization of sys.total().
DecayTrace fid_decay(const SystemAssembly& sys, const EigenSystem& eig, const PulseSpec& pulse,
                     const std::vector<double>& times);

// pi/2 - tau - pi - tau for every tau in `delays`; trace indexed by 2 tau.
DecayTrace hahn_echo(const SystemAssembly& sys, const PulseSpec& pulse_half, const PulseSpec& pulse_pi,
                     const std::vector<double>& delays);

// Frozen-central overlap decay |Tr[rho_B e^{i2pi H^a t} e^{-i2pi H^b t}]|^2
// with H^s the bath Hamiltonian conditioned on central level s.
DecayTrace loschmidt_decay(const SystemAssembly& sys, const std::vector<double>& times);

// Coherence amplitude c(t) = sum_{l,l'} G_{l l'} e^{i 2 pi (lambda_l' - lambda_l) t}
// with G_{l l'} = <l|rho|l'> <l'|readout|l>.
struct FrequencyDecomposition {
  EigenSystem eig;
  CMatrix weights;  // G
};

FrequencyDecomposition frequency_decomposition(const SystemAssembly& sys, const EigenSystem& eig,
                                               const CMatrix& rho_factor);

// Components with |g| >= floor * max|g|, sorted by |g| descending (ties by
// frequency, then index).
std::vector<FrequencyComponent> dynamical_frequencies(const SystemAssembly& sys, const CMatrix& rho_after_pulse,
                                                      double relative_floor = 1e-6);
std::vector<FrequencyComponent> dynamical_frequencies(const FrequencyDecomposition& fd,
                                                      double relative_floor = 1e-6);

// Evaluates sum_components g e^{i 2 pi delta t} at every time.
std::vector<cplx> reconstruct_amplitude(const std::vector<FrequencyComponent>& comps,
                                        const std::vector<double>& times);

// Physical process behind a frequency component, from the dominant
// uncoupled (H0) labels of the two eigenstates.
enum class BranchKind { kMainLine, kCentralFlip, kBathFlip, kFlipFlop };
std::string to_string(BranchKind kind);

struct ClassifiedComponent {
  FrequencyComponent component;
  BranchKind kind = BranchKind::kMainLine;
  double offset_hz = 0.0;  // |delta| - |transition frequency|
};

std::vector<ClassifiedComponent> classify_components(const SystemAssembly& sys, const EigenSystem& eig,
                                                     const std::vector<FrequencyComponent>& comps);

void write_classified_csv(std::ostream& out, double field_t, const std::vector<ClassifiedComponent>& comps);

// Uncoupled eigenbasis of H0: product states (central level s) (x) (bath
// eigenstate beta), ordered by energy (stable).
struct UncoupledBasis {
  RVector energies;
  CMatrix vectors;
  std::vector<int> central_level;
  std::vector<int> bath_state;
  std::vector<double> bath_polarization;  // <sum_k n.I_k> along the field axis
};
UncoupledBasis uncoupled_basis(const SystemAssembly& sys);

// Populations (levels x times) of the uncoupled levels under H0 + H_int,
// starting from uncoupled level `initial_index`.
RMatrix population_dynamics(const SystemAssembly& sys, int initial_index, const std::vector<double>& times);

}  // namespace spinbath
