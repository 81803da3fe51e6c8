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

#include <functional>
#include <vector>

#include "spinbath/types.hpp"

namespace spinbath {

struct LmOptions {
  int max_iterations = 500;
  double tolerance = 1e-12;  // relative step / cost change for convergence
};

struct LmResult {
  RVector params;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Levenberg-Marquardt least squares with a central-difference Jacobian.
LmResult levenberg_marquardt(const std::function<RVector(const RVector&)>& residuals, RVector initial,
                             const LmOptions& options = {});

struct StretchedFit {
  double t2_s = 0.0;
  double beta = 0.0;
  double residual_norm = 0.0;
};

// Least-squares fit of y = exp[-(t/T2)^beta] over the samples given.
// Initial guess (t2_init, beta = 1). Throws FitError on non-convergence.
StretchedFit fit_stretched(const std::vector<double>& t, const std::vector<double>& y, double t2_init);

struct InverseFieldFit {
  double exponent = 0.0;         // k in T = A B^k
  double prefactor = 0.0;        // A (s T^-k)
  double fixed_prefactor = 0.0;  // A1 of T = A1 / B, geometric mean of T B
  double residual_norm = 0.0;    // log-space residual
};

// Log-log linear regression. Throws FitError for fewer than three points,
// non-positive values or degenerate abscissae.
InverseFieldFit fit_inverse_field(const std::vector<double>& fields_t, const std::vector<double>& times_s);

struct GaussianFit {
  double amplitude = 0.0;
  double center = 0.0;
  double sigma = 0.0;
  double fwhm() const;
  double residual_norm = 0.0;
};

// Least-squares Gaussian through (x, y) samples.
GaussianFit fit_gaussian(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace spinbath
