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

#include "spinbath/ion_model.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "spinbath/geometry.hpp"

namespace spinbath {

using nlohmann::json;

std::string to_string(IonKind kind) {
  switch (kind) {
    case IonKind::kNonKramers:
      return "nonkramers";
    case IonKind::kKramers:
      return "kramers";
    case IonKind::kBare:
      return "bare";
  }
  return "unknown";
}

namespace {

bool is_zero(const Mat3& m) { return m.cwiseAbs().maxCoeff() == 0.0; }

Mat3 read_tensor(const json& j, const std::string& key) {
  const json& t = j.at(key);
  if (!t.is_array() || t.size() != 3) throw ConfigError("species: '" + key + "' must be a 3x3 array");
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    if (!t[r].is_array() || t[r].size() != 3)
      throw ConfigError("species: '" + key + "' must be a 3x3 array");
    for (int c = 0; c < 3; ++c) m(r, c) = t[r][c].get<double>();
  }
  return m;
}

IonKind parse_kind(const std::string& s) {
  if (s == "nonkramers") return IonKind::kNonKramers;
  if (s == "kramers") return IonKind::kKramers;
  if (s == "bare") return IonKind::kBare;
  throw ConfigError("species: unknown kind '" + s + "'");
}

}  // namespace

void IonModel::validate() const {
  const auto finite = [](const Mat3& m) { return m.allFinite(); };
  if (!finite(q_hz) || !finite(m_hz_per_t) || !finite(a_hz) || !finite(g) || !std::isfinite(g_n) ||
      !std::isfinite(gamma_hz_per_t))
    throw ConfigError("species '" + species + "': non-finite tensor entry");
  if (nuclear_multiplicity < 2) throw ConfigError("species '" + species + "': I_multiplicity < 2");
  switch (kind) {
    case IonKind::kNonKramers:
      if (electronic_multiplicity != 1)
        throw ConfigError("species '" + species + "': non-Kramers ions have S_multiplicity 1");
      if (!is_zero(a_hz) || !is_zero(g) || g_n != 0.0 || gamma_hz_per_t != 0.0)
        throw ConfigError("species '" + species + "': non-Kramers ion carries Kramers or bare parameters");
      if (!q_hz.isApprox(q_hz.transpose(), 1e-12))
        throw ConfigError("species '" + species + "': Q tensor must be symmetric");
      break;
    case IonKind::kKramers:
      if (electronic_multiplicity != 2)
        throw ConfigError("species '" + species + "': Kramers ions have S_multiplicity 2");
      if (!is_zero(q_hz) || !is_zero(m_hz_per_t) || gamma_hz_per_t != 0.0)
        throw ConfigError("species '" + species + "': Kramers ion carries non-Kramers or bare parameters");
      break;
    case IonKind::kBare:
      if (electronic_multiplicity != 1)
        throw ConfigError("species '" + species + "': bare species have S_multiplicity 1");
      if (!is_zero(q_hz) || !is_zero(m_hz_per_t) || !is_zero(a_hz) || !is_zero(g) || g_n != 0.0)
        throw ConfigError("species '" + species + "': bare species carries tensor parameters");
      break;
  }
  const int d = dimension();
  const auto [a, b] = transition;
  if (a < 0 || b < 0 || a >= d || b >= d || a == b)
    throw ConfigError("species '" + species + "': transition indices out of range");
}

IonModel IonModel::subsite_image() const {
  const Mat3 r = c2_rotation();
  IonModel out = *this;
  out.q_hz = r * q_hz * r.transpose();
  out.m_hz_per_t = r * m_hz_per_t * r.transpose();
  out.a_hz = r * a_hz * r.transpose();
  out.g = r * g * r.transpose();
  return out;
}

IonModel IonModel::bare(std::string species, double gamma_hz_per_t, int multiplicity) {
  IonModel ion;
  ion.species = std::move(species);
  ion.kind = IonKind::kBare;
  ion.nuclear_multiplicity = multiplicity;
  ion.gamma_hz_per_t = gamma_hz_per_t;
  ion.transition = {0, 1};
  ion.validate();
  return ion;
}

IonModel load_species(std::istream& in) {
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("species file: ") + e.what());
  }
  try {
    IonModel ion;
    ion.species = j.at("species").get<std::string>();
    ion.kind = parse_kind(j.at("kind").get<std::string>());
    ion.nuclear_multiplicity = j.at("I_multiplicity").get<int>();
    ion.electronic_multiplicity = j.value("S_multiplicity", 1);
    const auto has = [&](const char* k) { return j.contains(k) && !j[k].is_null(); };
    const auto forbid = [&](std::initializer_list<const char*> keys) {
      for (const char* k : keys)
        if (has(k))
          throw ConfigError("species '" + ion.species + "': key '" + k + "' not allowed for kind " +
                            to_string(ion.kind));
    };
    switch (ion.kind) {
      case IonKind::kNonKramers:
        forbid({"A_Hz", "g", "g_n", "gamma_Hz_per_T"});
        ion.q_hz = read_tensor(j, "Q_Hz");
        ion.m_hz_per_t = read_tensor(j, "M_Hz_per_T");
        break;
      case IonKind::kKramers:
        forbid({"Q_Hz", "M_Hz_per_T", "gamma_Hz_per_T"});
        ion.a_hz = read_tensor(j, "A_Hz");
        ion.g = read_tensor(j, "g");
        ion.g_n = j.at("g_n").get<double>();
        break;
      case IonKind::kBare:
        forbid({"Q_Hz", "M_Hz_per_T", "A_Hz", "g", "g_n"});
        ion.gamma_hz_per_t = j.at("gamma_Hz_per_T").get<double>();
        break;
    }
    if (has("transition")) {
      const auto t = j.at("transition");
      if (!t.is_array() || t.size() != 2) throw ConfigError("species: 'transition' must be [a, b]");
      ion.transition = {t[0].get<int>(), t[1].get<int>()};
    }
    ion.validate();
    return ion;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("species file: ") + e.what());
  }
}

IonModel load_species_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open species file '" + path + "'");
  return load_species(in);
}

}  // namespace spinbath
