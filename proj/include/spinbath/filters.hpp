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

#include <vector>

#include "spinbath/dynamics.hpp"

namespace spinbath {

// Blackman-windowed sinc low-pass taps (odd length, unit DC gain) sized for
// roughly four samples of the cutoff period per side.
std::vector<double> lowpass_taps(double cutoff_hz, double sample_rate_hz);

// |H(f)| of a symmetric FIR filter.
double fir_magnitude(const std::vector<double>& taps, double f_hz, double sample_rate_hz);

// Zero-phase (forward-backward) filtering of a uniformly sampled series with
// odd-reflection padding; output has the input length. Throws ParameterError
// when the cutoff is not inside (4 / horizon, Nyquist).
// True when the cutoff lies below Nyquist and spans more than four cycles of
// the record, so the filter has room to settle.
bool lowpass_in_band(double cutoff_hz, double step_s, std::size_t samples);

std::vector<double> lowpass_filter(const std::vector<double>& x, double step_s, double cutoff_hz);

std::vector<double> lowpass_envelope(const DecayTrace& trace, double cutoff_hz);

}  // namespace spinbath
