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


#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "spinbath/analysis.hpp"
#include "spinbath/filters.hpp"
#include "spinbath/fitting.hpp"

using namespace spinbath;

namespace {

DecayTrace synthetic(double horizon, double step, const std::function<double(double)>& f) {
  DecayTrace tr;
  tr.times = uniform_times(horizon, step);
  for (double t : tr.times) tr.amplitude.emplace_back(std::sqrt(f(t)), 0.0);
  tr.normalize();
  return tr;
}

}  // namespace

TEST_CASE("threshold crossing of an exponential is located within one step") {
  for (double tau : {2e-4, 1e-3, 2.5e-3}) {
    const DecayTrace tr = synthetic(8e-3, 1e-6, [&](double t) { return std::exp(-t / tau); });
    const CoherenceEstimate est = extract_coherence_time(tr);
    CHECK(est.valid);
    CHECK_FALSE(est.capped);
    CHECK(std::abs(est.t_s - tau * std::log(1.0 / 0.09)) < 1e-6);
  }
}

TEST_CASE("slow decays are capped at the detectable maximum") {
  const DecayTrace tr = synthetic(8e-3, 1e-6, [](double t) { return std::exp(-t / 0.1); });
  const CoherenceEstimate est = extract_coherence_time(tr);
  CHECK(est.valid);
  CHECK(est.capped);
  CHECK(est.t_s == doctest::Approx(6.5e-3));
}

TEST_CASE("oscillating non-decaying traces are invalid") {
  const DecayTrace tr = synthetic(8e-3, 1e-6, [](double t) { return 0.6 + 0.4 * std::cos(2 * kPi * 3e3 * t); });
  const CoherenceEstimate est = extract_coherence_time(tr);
  CHECK_FALSE(est.valid);
  CHECK(est.t_s == 0.0);
}

TEST_CASE("extraction parameter checks") {
  const DecayTrace tr = synthetic(5e-5, 1e-6, [](double t) { return std::exp(-t / 1e-3); });
  CHECK_THROWS_AS(extract_coherence_time(tr), ParameterError);
  CHECK_THROWS_AS(extract_coherence_time(std::vector<double>{0.0}, std::vector<double>{1.0}), ParameterError);
  ExtractionOptions opt;
  opt.tail_trim_frac = 1.0;
  CHECK_THROWS_AS(extract_coherence_time(synthetic(8e-3, 1e-5, [](double) { return 1.0; }), opt), ParameterError);
}

TEST_CASE("low-pass filter removes fast beats and keeps the envelope") {
  const auto taps = lowpass_taps(1e3, 1e6);
  CHECK(taps.size() % 2 == 1);
  double sum = 0;
  for (double v : taps) sum += v;
  CHECK(sum == doctest::Approx(1.0));
  CHECK(fir_magnitude(taps, 0.0, 1e6) == doctest::Approx(1.0));
  CHECK(fir_magnitude(taps, 1e4, 1e6) < 1e-3);

  // A tone at three times the cutoff loses at least 20 dB after filtering.
  std::vector<double> tone(8001);
  for (std::size_t k = 0; k < tone.size(); ++k) tone[k] = std::sin(2 * kPi * 3e3 * static_cast<double>(k) * 1e-6);
  const auto filtered = lowpass_filter(tone, 1e-6, 1e3);
  double peak = 0.0;
  for (std::size_t k = 1000; k < 7000; ++k) peak = std::max(peak, std::abs(filtered[k]));
  CHECK(peak <= 0.1);

  const DecayTrace tr = synthetic(8e-3, 1e-6, [](double t) {
    return std::exp(-t / 1e-3) * (0.75 + 0.25 * std::cos(2 * kPi * 50e3 * t));
  });
  ExtractionOptions opt;
  opt.cutoff_hz = 5e3;
  const CoherenceEstimate est = extract_coherence_time(tr, opt);
  CHECK(est.filtered);
  // The filtered envelope is 0.75 e^{-t/T}.
  CHECK(est.t_s == doctest::Approx(1e-3 * std::log(0.75 / 0.09)).epsilon(0.02));

  CHECK(lowpass_in_band(5e3, 1e-6, 8001));
  CHECK_FALSE(lowpass_in_band(1e2, 1e-6, 8001));
  CHECK_FALSE(lowpass_in_band(6e5, 1e-6, 8001));
  CHECK_THROWS_AS(lowpass_filter(tr.intensity, 1e-6, 6e5), ParameterError);
}

TEST_CASE("spectrum satisfies Parseval and locates a tone") {
  std::vector<double> x(1000);
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = 1.0 + std::cos(2 * kPi * 50e3 * static_cast<double>(k) * 1e-6);
  const Spectrum s = fourier_spectrum(x, 1e-6);
  CHECK(s.freq_energy == doctest::Approx(s.time_energy).epsilon(1e-12));
  const auto peak = std::max_element(s.magnitude.begin(), s.magnitude.end()) - s.magnitude.begin();
  CHECK(s.freq_hz[static_cast<std::size_t>(peak)] == doctest::Approx(50e3));
  std::vector<double> odd(999, 0.0);
  std::mt19937 rng(2);
  std::normal_distribution<double> n;
  for (double& v : odd) v = n(rng);
  const Spectrum so = fourier_spectrum(odd, 1e-6);
  CHECK(so.freq_energy == doctest::Approx(so.time_energy).epsilon(1e-12));
}

TEST_CASE("stretched-exponential fits recover their parameters") {
  std::vector<double> t, y;
  for (int k = 0; k <= 400; ++k) {
    t.push_back(k * 1e-5);
    y.push_back(std::exp(-std::pow(t.back() / 1.3e-3, 1.7)));
  }
  const StretchedFit f = fit_stretched(t, y, 1e-3);
  CHECK(f.t2_s == doctest::Approx(1.3e-3).epsilon(1e-6));
  CHECK(f.beta == doctest::Approx(1.7).epsilon(1e-6));

  const DecayTrace tr = synthetic(8e-3, 2e-6, [](double s) { return std::exp(-std::pow(s / 1e-3, 2.0)); });
  const StretchedFit g = fit_stretched(tr);
  CHECK(g.t2_s == doctest::Approx(1e-3).epsilon(1e-5));
  CHECK(g.beta == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("inverse-field and Gaussian fits") {
  const std::vector<double> b{1e-4, 1.5e-4, 2e-4, 3e-4};
  std::vector<double> tt;
  for (double v : b) tt.push_back(1.36e-7 / v);
  const InverseFieldFit f = fit_inverse_field(b, tt);
  CHECK(f.exponent == doctest::Approx(-1.0));
  CHECK(f.fixed_prefactor == doctest::Approx(1.36e-7));
  CHECK_THROWS_AS(fit_inverse_field({1e-4, 2e-4}, {1.0, 2.0}), FitError);
  CHECK_THROWS_AS(fit_inverse_field({1e-4, 2e-4, 3e-4}, {1.0, -2.0, 1.0}), FitError);

  std::vector<double> x, y;
  for (int k = -30; k <= 30; ++k) {
    x.push_back(k);
    y.push_back(5.0 * std::exp(-0.5 * std::pow((k - 2.0) / 7.0, 2)));
  }
  const GaussianFit gf = fit_gaussian(x, y);
  CHECK(gf.center == doctest::Approx(2.0));
  CHECK(std::abs(gf.sigma) == doctest::Approx(7.0));
  CHECK(gf.fwhm() == doctest::Approx(7.0 * 2 * std::sqrt(2 * std::log(2.0))));
}

TEST_CASE("Levenberg-Marquardt solves a linear least-squares problem") {
  const auto res = [](const RVector& p) {
    RVector r(3);
    r << p[0] + p[1] - 3.0, p[0] - p[1] - 1.0, 2 * p[0] - 4.0;
    return r;
  };
  const LmResult r = levenberg_marquardt(res, RVector::Zero(2));
  CHECK(r.converged);
  CHECK(r.params[0] == doctest::Approx(2.0));
  CHECK(r.params[1] == doctest::Approx(1.0));
}
