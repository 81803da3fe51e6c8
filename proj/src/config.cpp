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


#include "spinbath/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "spinbath/csv.hpp"

namespace spinbath {

using nlohmann::json;

namespace {

const std::pair<Scenario, const char*> kScenarioNames[] = {
    {Scenario::kDecay, "decay"},     {Scenario::kHahn, "hahn"},     {Scenario::kLoschmidt, "loschmidt"},
    {Scenario::kFreqmap, "freqmap"}, {Scenario::kCohmap, "cohmap"}, {Scenario::kPopdyn, "popdyn"},
    {Scenario::kHistogram, "histogram"}, {Scenario::kCce, "cce"}, {Scenario::kGradient, "gradient"},
    {Scenario::kValidate, "validate"}};

const std::pair<SequenceKind, const char*> kSequenceNames[] = {{SequenceKind::kFid, "fid"},
                                                               {SequenceKind::kHahn, "hahn"},
                                                               {SequenceKind::kLoschmidt, "loschmidt"},
                                                               {SequenceKind::kPopdyn, "popdyn"}};

std::string resolve(const std::string& base, const std::string& p) {
  if (p.empty()) return p;
  std::filesystem::path path(p);
  if (path.is_absolute()) return p;
  return (std::filesystem::path(base) / path).lexically_normal().string();
}

// Number, list of numbers, or {"start", "stop", "count", "endpoint"}.
std::vector<double> read_axis(const json& j, const std::string& name) {
  if (j.is_number()) return {j.get<double>()};
  if (j.is_array()) {
    std::vector<double> out;
    for (const auto& v : j) {
      if (!v.is_number()) throw ConfigError("config: '" + name + "' must contain numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }
  if (j.is_object()) {
    const double start = j.at("start").get<double>();
    const double stop = j.at("stop").get<double>();
    const int count = j.at("count").get<int>();
    const bool endpoint = j.value("endpoint", true);
    if (count < 0) throw ConfigError("config: '" + name + ".count' must be >= 0");
    std::vector<double> out;
    const int div = endpoint ? count - 1 : count;
    for (int i = 0; i < count; ++i) out.push_back(div > 0 ? start + (stop - start) * i / div : start);
    return out;
  }
  throw ConfigError("config: '" + name + "' must be a number, list or range");
}

PulseSpec read_pulse(const json& j, PulseSpec p, const std::string& name) {
  const std::string kind = j.value("kind", std::string(p.kind == PulseKind::kIdealRotation ? "ideal" : "adiabatic"));
  if (kind == "ideal") p.kind = PulseKind::kIdealRotation;
  else if (kind == "adiabatic") p.kind = PulseKind::kAdiabaticChirp;
  else throw ConfigError("config: '" + name + ".kind' must be ideal or adiabatic");
  p.angle = j.value("angle", p.angle);
  p.fwhm_s = j.value("fwhm_s", p.fwhm_s);
  p.chirp_span_hz = j.value("chirp_span_hz", p.chirp_span_hz);
  p.peak_rabi_hz = j.value("peak_rabi_hz", p.peak_rabi_hz);
  if (j.contains("center_hz")) p.center_hz = j.at("center_hz").get<double>();
  if (j.contains("passage")) {
    const std::string s = j.at("passage").get<std::string>();
    if (s == "half") p.passage = Passage::kHalf;
    else if (s == "full") p.passage = Passage::kFull;
    else throw ConfigError("config: '" + name + ".passage' must be half or full");
  }
  if (j.contains("rf_axis")) {
    const auto& a = j.at("rf_axis");
    if (!a.is_array() || a.size() != 3) throw ConfigError("config: '" + name + ".rf_axis' must be [x, y, z]");
    p.rf_axis = Vec3(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
  }
  p.tolerance = j.value("tolerance", p.tolerance);
  p.max_refinements = j.value("max_refinements", p.max_refinements);
  try {
    p.validate();
  } catch (const Error& e) {
    throw ConfigError("config: '" + name + "': " + e.what());
  }
  return p;
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    return parse_double(value);
  } catch (const ParseError&) {
    throw ConfigError("override '" + key + "': not a number: '" + value + "'");
  }
}

}  // namespace

std::string to_string(Scenario s) {
  for (const auto& [k, n] : kScenarioNames)
    if (k == s) return n;
  return "unknown";
}

Scenario parse_scenario(const std::string& name) {
  for (const auto& [k, n] : kScenarioNames)
    if (name == n) return k;
  throw ConfigError("unknown scenario '" + name + "'");
}

std::string to_string(SequenceKind s) {
  for (const auto& [k, n] : kSequenceNames)
    if (k == s) return n;
  return "unknown";
}

SequenceKind parse_sequence(const std::string& name) {
  for (const auto& [k, n] : kSequenceNames)
    if (name == n) return k;
  throw ConfigError("config: 'sequence.kind' must be fid, hahn, loschmidt or popdyn (got '" + name + "')");
}

FieldSpec FieldGrid::at(std::size_t i) const {
  const std::size_t nb = amplitudes.size(), np = phis.size();
  const std::size_t ib = i % nb, ip = (i / nb) % np, it = i / (nb * np);
  return FieldSpec(amplitudes[ib], thetas[it], phis[ip]);
}

void RunConfig::validate() const {
  if (species_path.empty()) throw ConfigError("config: 'species' is required");
  if (!(horizon_s > 0.0)) throw ConfigError("config: 'time.horizon_s' must be > 0");
  if (!(step_s > 0.0)) throw ConfigError("config: 'time.step_s' must be > 0");
  if (step_s > horizon_s) throw ConfigError("config: 'time.step_s' exceeds the horizon");
  if (bath_n < 0) throw ConfigError("config: 'bath.n' must be >= 0");
  if (bath_n > 0 && positions_path.empty()) throw ConfigError("config: 'positions' is required when bath.n > 0");
  if (bath_n > 0 && bath_species_path.empty())
    throw ConfigError("config: 'bath_species' is required when bath.n > 0");
  if (parallelism < 1) throw ConfigError("config: 'parallelism' must be >= 1");
  if (bath_polarization < -1.0 || bath_polarization > 1.0)
    throw ConfigError("config: 'bath.polarization' must lie in [-1, 1]");
  if (!(analysis.threshold > 0.0 && analysis.threshold < 1.0))
    throw ConfigError("config: 'analysis.threshold' must lie in (0, 1)");
  if (analysis.head_trim_s < 0.0) throw ConfigError("config: 'analysis.head_trim_s' must be >= 0");
  if (analysis.tail_trim_frac < 0.0 || analysis.tail_trim_frac >= 1.0)
    throw ConfigError("config: 'analysis.tail_trim_frac' must lie in [0, 1)");
  if (analysis.cutoff_hz && !(*analysis.cutoff_hz > 0.0))
    throw ConfigError("config: 'analysis.cutoff_hz' must be > 0");
  if (freq_floor < 0.0 || freq_floor >= 1.0) throw ConfigError("config: 'freqmap.floor' must lie in [0, 1)");
  if (histogram_spins < 1 || histogram_up < 0 || histogram_up > histogram_spins)
    throw ConfigError("config: 'histogram' spin counts are inconsistent");
  const auto unique_axis = [](std::vector<double> v, const char* name) {
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
      throw ConfigError(std::string("config: '") + name + "' contains duplicate values");
  };
  unique_axis(grid.amplitudes, "field.B");
  unique_axis(grid.thetas, "field.theta");
  unique_axis(grid.phis, "field.phi");
  for (double b : grid.amplitudes)
    if (!std::isfinite(b) || b < 0.0) throw ConfigError("config: 'field.B' values must be finite and >= 0");
  for (double t : grid.thetas)
    if (!std::isfinite(t) || t < 0.0 || t > kPi) throw ConfigError("config: 'field.theta' values must lie in [0, pi]");
  for (double p : grid.phis)
    if (!std::isfinite(p) || p < 0.0 || p > kTwoPi)
      throw ConfigError("config: 'field.phi' values must lie in [0, 2 pi]");
}

RunConfig parse_run_config(std::istream& in, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("run config: ") + e.what());
  }
  RunConfig c;
  try {
    c.species_path = resolve(base_dir, j.value("species", std::string()));
    c.bath_species_path = resolve(base_dir, j.value("bath_species", std::string()));
    c.positions_path = resolve(base_dir, j.value("positions", std::string()));
    if (j.contains("bath")) {
      const auto& b = j.at("bath");
      c.bath_n = b.value("n", c.bath_n);
      const std::string policy = b.value("policy", std::string("flipflop"));
      if (policy == "flipflop") c.bath_policy = BathTermPolicy::kFlipFlop;
      else if (policy == "full") c.bath_policy = BathTermPolicy::kFull;
      else throw ConfigError("config: 'bath.policy' must be flipflop or full");
      const std::string coupling = b.value("coupling", std::string("full"));
      if (coupling == "full") c.coupling = CouplingModel::kFull;
      else if (coupling == "mean_dipole") c.coupling = CouplingModel::kMeanDipole;
      else throw ConfigError("config: 'bath.coupling' must be full or mean_dipole");
      c.bath_polarization = b.value("polarization", 0.0);
    }
    // "field" holds the grid axes; a missing axis means a single value.
    if (j.contains("field")) {
      const auto& f = j.at("field");
      c.grid.amplitudes = f.contains("B") ? read_axis(f.at("B"), "field.B") : std::vector<double>{0.0};
      c.grid.thetas = f.contains("theta") ? read_axis(f.at("theta"), "field.theta") : std::vector<double>{0.0};
      c.grid.phis = f.contains("phi") ? read_axis(f.at("phi"), "field.phi") : std::vector<double>{0.0};
    } else {
      c.grid = {{0.0}, {0.0}, {0.0}};
    }
    if (j.contains("sequence")) {
      const auto& s = j.at("sequence");
      c.sequence = parse_sequence(s.value("kind", std::string("fid")));
      if (s.contains("pulse")) c.pulse = read_pulse(s.at("pulse"), c.pulse, "sequence.pulse");
      c.pi_pulse = c.pulse;
      c.pi_pulse.angle = kPi;
      if (c.pi_pulse.kind == PulseKind::kAdiabaticChirp) c.pi_pulse.passage = Passage::kFull;
      if (s.contains("pi_pulse")) c.pi_pulse = read_pulse(s.at("pi_pulse"), c.pi_pulse, "sequence.pi_pulse");
      if (s.contains("initial_index")) c.popdyn_initial = s.at("initial_index").get<int>();
    }
    if (j.contains("time")) {
      const auto& t = j.at("time");
      c.horizon_s = t.value("horizon_s", c.horizon_s);
      c.step_s = t.value("step_s", c.step_s);
    }
    if (j.contains("analysis")) {
      const auto& a = j.at("analysis");
      c.analysis.threshold = a.value("threshold", c.analysis.threshold);
      c.analysis.head_trim_s = a.value("head_trim_s", c.analysis.head_trim_s);
      c.analysis.tail_trim_frac = a.value("tail_trim_frac", c.analysis.tail_trim_frac);
      c.analysis.variation_ratio = a.value("variation_ratio", c.analysis.variation_ratio);
      if (a.contains("cutoff_hz")) {
        const auto& cut = a.at("cutoff_hz");
        if (cut.is_null() || (cut.is_string() && cut.get<std::string>() == "none")) {
          c.auto_cutoff = false;
        } else if (cut.is_string() && cut.get<std::string>() == "auto") {
          c.auto_cutoff = true;
        } else {
          c.analysis.cutoff_hz = cut.get<double>();
          c.auto_cutoff = false;
        }
      }
      const std::string method = a.value("method", std::string("threshold"));
      if (method == "threshold") c.method = CohMethod::kThreshold;
      else if (method == "stretched") c.method = CohMethod::kStretched;
      else throw ConfigError("config: 'analysis.method' must be threshold or stretched");
    }
    if (j.contains("freqmap")) c.freq_floor = j.at("freqmap").value("floor", c.freq_floor);
    if (j.contains("histogram")) {
      c.histogram_spins = j.at("histogram").value("spins", c.histogram_spins);
      c.histogram_up = j.at("histogram").value("up", c.histogram_up);
    }
    if (j.contains("output")) {
      const auto& o = j.at("output");
      c.out_dir = o.value("dir", c.out_dir);
      c.svg = o.value("svg", c.svg);
      c.write_traces = o.value("traces", c.write_traces);
    }
    c.parallelism = j.value("parallelism", c.parallelism);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("run config: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open run config '" + path + "'");
  const auto base = std::filesystem::path(path).parent_path();
  return parse_run_config(in, base.empty() ? "." : base.string());
}

void apply_override(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "field.B") {
    c.grid.amplitudes = {parse_number(key, value)};
  } else if (key == "field.theta") {
    c.grid.thetas = {parse_number(key, value)};
  } else if (key == "field.phi") {
    c.grid.phis = {parse_number(key, value)};
  } else if (key == "bath.n") {
    const double n = parse_number(key, value);
    if (n != std::floor(n)) throw ConfigError("override 'bath.n': not an integer");
    c.bath_n = static_cast<int>(n);
  } else if (key == "seq") {
    c.sequence = parse_sequence(value);
  } else if (key == "out") {
    c.out_dir = value;
  } else {
    throw ConfigError("unknown override '" + key + "'");
  }
  c.validate();
}

std::optional<std::string> output_dir_from_env() {
  const char* v = std::getenv("SPINBATH_OUT");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

}  // namespace spinbath
