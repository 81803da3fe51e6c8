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

#include "spinbath/types.hpp"

namespace spinbath {

// e^{-i 2 pi x} with the integer part of x removed first, so that large
// phase counts keep full precision.
cplx phase_cycles(double x);

// H = P diag(lambda) P^dagger with lambda ascending (Hz).
struct EigenSystem {
  RVector values;
  CMatrix vectors;

  int dimension() const { return static_cast<int>(values.size()); }
  // P diag(e^{-i 2 pi lambda t}) P^dagger
  CMatrix propagator(double t) const;
  // ||P diag(lambda) P^dagger - H||_F / ||H||_F
  double reconstruction_residual(const CMatrix& h) const;
};

// Hermitian eigendecomposition. Throws NumericError when the relative
// Hermiticity defect exceeds `hermiticity_tolerance`.
EigenSystem diagonalize(const CMatrix& h, double hermiticity_tolerance = 1e-10);

// rho(t) = U rho0 U^dagger.
CMatrix evolve(const CMatrix& rho0, const EigenSystem& eig, double t);

struct DecayTrace {
  std::vector<double> times;            // seconds, uniform
  std::vector<cplx> amplitude;          // c(t)
  std::vector<double> intensity;        // |c|^2 / normalization
  double normalization = 1.0;           // |c(first sample)|^2

  std::size_t size() const { return times.size(); }
  double step() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
  double horizon() const { return times.empty() ? 0.0 : times.back(); }
  // Fills `intensity` from `amplitude`, normalizing to the first sample.
  void normalize();
};

// Uniform grid 0, dt, ..., horizon (inclusive within rounding).
std::vector<double> uniform_times(double horizon, double step);

// One (l, l') term of the coherence amplitude c(t) = sum g e^{i 2 pi df t}.
struct FrequencyComponent {
  double delta_hz = 0.0;  // lambda_l' - lambda_l (signed)
  cplx weight;
  int l = 0;
  int lp = 0;

  double frequency() const { return delta_hz < 0 ? -delta_hz : delta_hz; }
};

void write_trace_csv(std::ostream& out, const DecayTrace& trace);
void write_components_csv(std::ostream& out, const std::vector<FrequencyComponent>& comps);

}  // namespace spinbath
