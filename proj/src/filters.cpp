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


#include "spinbath/filters.hpp"

#include <algorithm>
#include <cmath>

namespace spinbath {

std::vector<double> lowpass_taps(double cutoff_hz, double sample_rate_hz) {
  const double fc = cutoff_hz / sample_rate_hz;  // cycles per sample
  const int half = static_cast<int>(std::ceil(2.0 / fc));
  const int n = 2 * half + 1;
  std::vector<double> taps(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double m = k - half;
    const double sinc = m == 0 ? 2.0 * fc : std::sin(kTwoPi * fc * m) / (kPi * m);
    const double w = 0.42 - 0.5 * std::cos(kTwoPi * k / (n - 1)) + 0.08 * std::cos(2.0 * kTwoPi * k / (n - 1));
    taps[static_cast<std::size_t>(k)] = sinc * w;
    sum += sinc * w;
  }
  for (double& t : taps) t /= sum;
  return taps;
}

double fir_magnitude(const std::vector<double>& taps, double f_hz, double sample_rate_hz) {
  const int half = static_cast<int>(taps.size() / 2);
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < taps.size(); ++k) {
    const double arg = kTwoPi * f_hz / sample_rate_hz * (static_cast<int>(k) - half);
    re += taps[k] * std::cos(arg);
    im -= taps[k] * std::sin(arg);
  }
  return std::hypot(re, im);
}

namespace {

// Centered convolution with odd-reflection padding at both ends.
std::vector<double> centered_pass(const std::vector<double>& x, const std::vector<double>& taps) {
  const int n = static_cast<int>(x.size());
  const int half = static_cast<int>(taps.size() / 2);
  const auto at = [&](int i) {
    if (i < 0) return 2.0 * x.front() - x[static_cast<std::size_t>(std::min(-i, n - 1))];
    if (i >= n) return 2.0 * x.back() - x[static_cast<std::size_t>(std::max(2 * (n - 1) - i, 0))];
    return x[static_cast<std::size_t>(i)];
  };
  std::vector<double> y(x.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int k = -half; k <= half; ++k) acc += taps[static_cast<std::size_t>(k + half)] * at(i - k);
    y[static_cast<std::size_t>(i)] = acc;
  }
  return y;
}

}  // namespace

bool lowpass_in_band(double cutoff_hz, double step_s, std::size_t samples) {
  if (samples < 2 || !(step_s > 0.0)) return false;
  const double horizon = step_s * static_cast<double>(samples - 1);
  return cutoff_hz < 0.5 / step_s && cutoff_hz * horizon > 4.0;
}

std::vector<double> lowpass_filter(const std::vector<double>& x, double step_s, double cutoff_hz) {
  if (x.size() < 2 || !(step_s > 0.0)) throw ParameterError("lowpass: need at least two samples and a positive step");
  const double fs = 1.0 / step_s;
  const double horizon = step_s * static_cast<double>(x.size() - 1);
  if (!lowpass_in_band(cutoff_hz, step_s, x.size()))
    throw ParameterError("lowpass: cutoff " + std::to_string(cutoff_hz) + " Hz outside the usable band (" +
                         std::to_string(4.0 / horizon) + ", " + std::to_string(0.5 * fs) + ") Hz");
  const auto taps = lowpass_taps(cutoff_hz, fs);
  return centered_pass(centered_pass(x, taps), taps);
}

std::vector<double> lowpass_envelope(const DecayTrace& trace, double cutoff_hz) {
  return lowpass_filter(trace.intensity, trace.step(), cutoff_hz);
}

}  // namespace spinbath
