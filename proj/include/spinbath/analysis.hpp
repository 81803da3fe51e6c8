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
#include <ostream>
#include <string>
#include <vector>

#include "spinbath/dynamics.hpp"
#include "spinbath/fitting.hpp"

namespace spinbath {

enum class CoherenceMethod { kThresholdEnvelope, kStretchedFit };
std::string to_string(CoherenceMethod m);

struct ExtractionOptions {
  double threshold = 0.09;
  double head_trim_s = 100e-6;
  // Fraction of the horizon excluded at the end. An 8 ms horizon is capped
  // at 6.5 ms with the default.
  double tail_trim_frac = 0.1875;
  std::optional<double> cutoff_hz;  // low-pass the intensity first when set
  double variation_ratio = 3.0;     // "not decay-like" total-variation factor
};

struct CoherenceEstimate {
  double t_s = 0.0;
  CoherenceMethod method = CoherenceMethod::kThresholdEnvelope;
  bool valid = false;
  bool capped = false;  // never crossed the threshold: T is the detectable maximum
  bool filtered = false;
  double window_start_s = 0.0;
  double window_end_s = 0.0;
};

// Threshold-crossing coherence time of a normalized trace. The crossing is
// located by linear interpolation between samples. Throws ParameterError when
// the horizon is shorter than the trims.
CoherenceEstimate extract_coherence_time(const DecayTrace& trace, const ExtractionOptions& options = {});
CoherenceEstimate extract_coherence_time(const std::vector<double>& times, const std::vector<double>& intensity,
                                         const ExtractionOptions& options = {});

// Stretched-exponential fit of the intensity over [0, min(horizon, 3 T_thr)],
// initialized with T2 = T_thr / ln(1/threshold) and beta = 1.
StretchedFit fit_stretched(const DecayTrace& trace, const ExtractionOptions& options = {});

struct Spectrum {
  std::vector<double> freq_hz;    // 0 .. Nyquist
  std::vector<double> magnitude;  // |DFT| of I(t) - mean
  double time_energy = 0.0;       // sum (I - mean)^2
  double freq_energy = 0.0;       // (1/N) sum_all |X_k|^2 reconstructed from the one-sided half
};

Spectrum fourier_spectrum(const DecayTrace& trace);
Spectrum fourier_spectrum(const std::vector<double>& x, double step_s);

void write_spectrum_csv(std::ostream& out, const Spectrum& s);

}  // namespace spinbath
