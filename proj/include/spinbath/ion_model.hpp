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

#include <istream>
#include <string>
#include <utility>

#include "spinbath/types.hpp"

namespace spinbath {

enum class IonKind {
  kNonKramers,  // I.Q.I + B.M.I
  kKramers,     // I.A.S + muB B.g.S + muN gn B.I
  kBare,        // gamma B.I
};

std::string to_string(IonKind kind);

// Species definition. All tensors are in the (D1, D2, b) lab frame.
// For Kramers ions the joint space is ordered nuclear (x) electronic.
struct IonModel {
  std::string species;
  IonKind kind = IonKind::kBare;
  int nuclear_multiplicity = 2;
  int electronic_multiplicity = 1;
  Mat3 q_hz = Mat3::Zero();
  Mat3 m_hz_per_t = Mat3::Zero();
  Mat3 a_hz = Mat3::Zero();
  Mat3 g = Mat3::Zero();
  double g_n = 0.0;
  double gamma_hz_per_t = 0.0;
  // Addressed transition as indices into the continuation-ordered levels;
  // `first` is the level the population starts in.
  std::pair<int, int> transition{0, 1};

  int dimension() const { return nuclear_multiplicity * electronic_multiplicity; }

  // Throws ConfigError when the populated tensor set does not match `kind`
  // or a value is out of domain.
  void validate() const;

  // Copy of this model on the C2-related magnetic subsite.
  IonModel subsite_image() const;

  static IonModel bare(std::string species, double gamma_hz_per_t, int multiplicity = 2);
};

// JSON species file with keys: species, kind, I_multiplicity, S_multiplicity,
// Q_Hz, M_Hz_per_T, A_Hz, g, g_n, gamma_Hz_per_T, transition.
IonModel load_species(std::istream& in);
IonModel load_species_file(const std::string& path);

}  // namespace spinbath
