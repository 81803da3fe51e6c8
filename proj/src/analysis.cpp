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


#include "spinbath/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include <unsupported/Eigen/FFT>

#include "spinbath/csv.hpp"
#include "spinbath/filters.hpp"

namespace spinbath {

std::string to_string(CoherenceMethod m) {
  return m == CoherenceMethod::kThresholdEnvelope ? "threshold_envelope" : "stretched_fit";
}

CoherenceEstimate extract_coherence_time(const std::vector<double>& times, const std::vector<double>& intensity,
                                         const ExtractionOptions& options) {
  if (times.size() != intensity.size() || times.size() < 2)
    throw ParameterError("extract: need matching time and intensity series with >= 2 samples");
  if (!(options.tail_trim_frac >= 0.0 && options.tail_trim_frac < 1.0) || !(options.head_trim_s >= 0.0))
    throw ParameterError("extract: trims out of range");
  const double horizon = times.back();
  CoherenceEstimate est;
  est.window_start_s = options.head_trim_s;
  est.window_end_s = horizon * (1.0 - options.tail_trim_frac);
  if (!(est.window_end_s > est.window_start_s)) throw ParameterError("extract: horizon shorter than the trims");

  std::vector<double> env = intensity;
  if (options.cutoff_hz) {
    env = lowpass_filter(intensity, times[1] - times[0], *options.cutoff_hz);
    est.filtered = true;
  }
  // Window samples: window_start <= t <= window_end (small tolerance for grid rounding).
  const double eps = 1e-9 * (times[1] - times[0]);
  std::size_t first = 0;
  while (first < times.size() && times[first] < est.window_start_s - eps) ++first;
  std::size_t last = first;
  while (last + 1 < times.size() && times[last + 1] <= est.window_end_s + eps) ++last;
  if (first >= times.size()) throw ParameterError("extract: empty analysis window");

  for (std::size_t k = first; k <= last; ++k) {
    if (env[k] < options.threshold) {
      est.valid = true;
      if (k == first || k == 0) {
        est.t_s = times[k];
      } else {
        const double y0 = env[k - 1], y1 = env[k];
        const double frac = (y0 - options.threshold) / (y0 - y1);
        est.t_s = times[k - 1] + frac * (times[k] - times[k - 1]);
      }
      if (!(est.t_s > 0.0)) {
        est.valid = false;
        est.t_s = 0.0;
      }
      return est;
    }
  }
  // Never below threshold: decay-like traces are capped at the window end.
  double tv = 0.0;
  double min_env = env[first];
  for (std::size_t k = first + 1; k <= last; ++k) {
    tv += std::abs(env[k] - env[k - 1]);
    min_env = std::min(min_env, env[k]);
  }
  const double net = env[first] - env[last];
  if (min_env > options.threshold && tv > options.variation_ratio * net && tv > 0.0) {
    est.valid = false;
    est.t_s = 0.0;
    return est;
  }
  est.valid = true;
  est.capped = true;
  est.t_s = est.window_end_s;
  return est;
}

CoherenceEstimate extract_coherence_time(const DecayTrace& trace, const ExtractionOptions& options) {
  return extract_coherence_time(trace.times, trace.intensity, options);
}

StretchedFit fit_stretched(const DecayTrace& trace, const ExtractionOptions& options) {
  const CoherenceEstimate est = extract_coherence_time(trace, options);
  if (!est.valid || !(est.t_s > 0.0)) throw FitError("stretched fit: trace is not decay-like", 0.0);
  const double window = std::min(trace.horizon(), 3.0 * est.t_s);
  std::vector<double> t, y;
  for (std::size_t k = 0; k < trace.size() && trace.times[k] <= window; ++k) {
    t.push_back(trace.times[k]);
    y.push_back(trace.intensity[k]);
  }
  return fit_stretched(t, y, est.t_s / std::log(1.0 / options.threshold));
}

Spectrum fourier_spectrum(const std::vector<double>& x, double step_s) {
  if (x.size() < 2 || !(step_s > 0.0)) throw ParameterError("spectrum: need >= 2 samples and a positive step");
  const std::size_t n = x.size();
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  std::vector<double> centered(n);
  for (std::size_t k = 0; k < n; ++k) centered[k] = x[k] - mean;
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, centered);
  Spectrum s;
  for (double v : centered) s.time_energy += v * v;
  const std::size_t half = n / 2;
  double e = 0.0;
  for (std::size_t k = 0; k <= half; ++k) {
    s.freq_hz.push_back(static_cast<double>(k) / (static_cast<double>(n) * step_s));
    s.magnitude.push_back(std::abs(spec[k]));
    const bool self_mirrored = k == 0 || (n % 2 == 0 && k == half);
    e += (self_mirrored ? 1.0 : 2.0) * std::norm(spec[k]);
  }
  s.freq_energy = e / static_cast<double>(n);
  return s;
}

Spectrum fourier_spectrum(const DecayTrace& trace) { return fourier_spectrum(trace.intensity, trace.step()); }

void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
  CsvWriter w(out, {"freq_hz", "magnitude"});
  for (std::size_t k = 0; k < s.freq_hz.size(); ++k) {
    w << s.freq_hz[k] << s.magnitude[k];
    w.end_row();
  }
}

}  // namespace spinbath
