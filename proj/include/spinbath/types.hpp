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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spinbath {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

namespace constants {
// Planck constant (J s) and vacuum permeability (T m / A).
inline constexpr double kPlanck = 6.62607015e-34;
inline constexpr double kMu0 = 1.25663706212e-6;  // CODATA 2018
inline constexpr double kMu0Over4Pi = kMu0 / (4.0 * std::numbers::pi);
// mu0 h / 4 pi: converts a product of two moments in Hz/T over r^3 (m^3) to Hz.
inline constexpr double kDipolarPrefactor = kMu0Over4Pi * kPlanck;
// Bohr and nuclear magnetons expressed as frequencies (Hz/T).
inline constexpr double kBohrMagnetonHzPerT = 13.996244936e9;
inline constexpr double kNuclearMagnetonHzPerT = 7.6225932291e6;
inline constexpr double kAngstrom = 1e-10;
}  // namespace constants

// Error hierarchy. Every failure raised by the library derives from Error so
// callers (the CLI in particular) can map them to exit codes in one place.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class AggregationError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  FitError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace spinbath
