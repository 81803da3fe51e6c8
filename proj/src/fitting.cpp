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


#include "spinbath/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Cholesky>

namespace spinbath {

LmResult levenberg_marquardt(const std::function<RVector(const RVector&)>& residuals, RVector initial,
                             const LmOptions& options) {
  LmResult res;
  RVector p = std::move(initial);
  RVector r = residuals(p);
  double cost = r.squaredNorm();
  if (!std::isfinite(cost)) throw FitError("fit: non-finite residuals at the initial guess", cost);
  double lambda = 1e-3;
  const auto n = p.size();
  for (int it = 0; it < options.max_iterations; ++it) {
    res.iterations = it + 1;
    RMatrix jac(r.size(), n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(p[j]));
      RVector pp = p, pm = p;
      pp[j] += h;
      pm[j] -= h;
      jac.col(j) = (residuals(pp) - residuals(pm)) / (2.0 * h);
    }
    const RMatrix jtj = jac.transpose() * jac;
    const RVector g = jac.transpose() * r;
    if (g.cwiseAbs().maxCoeff() < 1e-15 * std::max(1.0, cost)) {
      res.converged = true;
      break;
    }
    bool improved = false;
    for (int attempt = 0; attempt < 40; ++attempt) {
      RMatrix a = jtj;
      a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
      const RVector step = a.ldlt().solve(-g);
      const RVector pn = p + step;
      const RVector rn = residuals(pn);
      const double cn = rn.squaredNorm();
      if (std::isfinite(cn) && cn <= cost) {
        const double rel_step = step.norm() / std::max(p.norm(), 1e-300);
        const double rel_cost = (cost - cn) / std::max(cost, 1e-300);
        p = pn;
        r = rn;
        cost = cn;
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
        if (rel_step < options.tolerance || rel_cost < options.tolerance) res.converged = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved) {
      // No downhill step exists at any damping: a (local) minimum.
      res.converged = true;
      break;
    }
    if (res.converged) break;
  }
  res.params = p;
  res.residual_norm = std::sqrt(cost);
  return res;
}

StretchedFit fit_stretched(const std::vector<double>& t, const std::vector<double>& y, double t2_init) {
  if (t.size() != y.size() || t.size() < 3) throw FitError("stretched fit: need at least three samples", 0.0);
  if (!(t2_init > 0.0)) throw FitError("stretched fit: initial T2 must be > 0", 0.0);
  const auto model = [&](const RVector& q) {
    const double t2 = std::exp(q[0]), beta = std::exp(q[1]);
    RVector r(static_cast<Eigen::Index>(t.size()));
    for (std::size_t k = 0; k < t.size(); ++k)
      r[static_cast<Eigen::Index>(k)] = std::exp(-std::pow(t[k] / t2, beta)) - y[k];
    return r;
  };
  RVector q0(2);
  q0 << std::log(t2_init), 0.0;
  const LmResult lm = levenberg_marquardt(model, q0);
  if (!lm.converged || !lm.params.allFinite()) throw FitError("stretched fit did not converge", lm.residual_norm);
  return {std::exp(lm.params[0]), std::exp(lm.params[1]), lm.residual_norm};
}

InverseFieldFit fit_inverse_field(const std::vector<double>& fields_t, const std::vector<double>& times_s) {
  const std::size_t n = fields_t.size();
  if (n != times_s.size() || n < 3) throw FitError("inverse-field fit: need at least three points", 0.0);
  std::vector<double> x(n), y(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(fields_t[k] > 0.0) || !(times_s[k] > 0.0))
      throw FitError("inverse-field fit: fields and times must be > 0", 0.0);
    x[k] = std::log(fields_t[k]);
    y[k] = std::log(times_s[k]);
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  if (!(sxx > 1e-24 * n)) throw FitError("inverse-field fit: degenerate field values", 0.0);
  InverseFieldFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  double ss = 0.0, log_a1 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double e = y[k] - (my + fit.exponent * (x[k] - mx));
    ss += e * e;
    log_a1 += y[k] + x[k];
  }
  fit.residual_norm = std::sqrt(ss);
  fit.fixed_prefactor = std::exp(log_a1 / n);
  return fit;
}

double GaussianFit::fwhm() const { return 2.0 * std::sqrt(2.0 * std::log(2.0)) * std::abs(sigma); }

GaussianFit fit_gaussian(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3) throw FitError("gaussian fit: need at least three samples", 0.0);
  double w = 0.0, m1 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    w += y[k];
    m1 += y[k] * x[k];
  }
  if (!(w > 0.0)) throw FitError("gaussian fit: no positive weight", 0.0);
  const double mean = m1 / w;
  double m2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) m2 += y[k] * (x[k] - mean) * (x[k] - mean);
  const double sd = std::sqrt(m2 / w);
  const double scale = sd > 0.0 ? sd : 1.0;
  const double peak = *std::max_element(y.begin(), y.end());
  // Parameters: amplitude, center offset and log-sigma, in units of the data spread.
  const auto model = [&](const RVector& q) {
    const double a = q[0] * peak, c = mean + q[1] * scale, s = std::exp(q[2]) * scale;
    RVector r(static_cast<Eigen::Index>(x.size()));
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double z = (x[k] - c) / s;
      r[static_cast<Eigen::Index>(k)] = a * std::exp(-0.5 * z * z) - y[k];
    }
    return r;
  };
  RVector q0(3);
  q0 << 1.0, 0.0, 0.0;
  const LmResult lm = levenberg_marquardt(model, q0);
  if (!lm.converged || !lm.params.allFinite()) throw FitError("gaussian fit did not converge", lm.residual_norm);
  GaussianFit g;
  g.amplitude = lm.params[0] * peak;
  g.center = mean + lm.params[1] * scale;
  g.sigma = std::exp(lm.params[2]) * scale;
  g.residual_norm = lm.residual_norm;
  return g;
}

}  // namespace spinbath
