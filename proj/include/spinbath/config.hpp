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
#include <optional>
#include <string>
#include <vector>

#include "spinbath/analysis.hpp"
#include "spinbath/assembly.hpp"
#include "spinbath/geometry.hpp"
#include "spinbath/pulses.hpp"

namespace spinbath {

enum class Scenario { kDecay, kHahn, kLoschmidt, kFreqmap, kCohmap, kPopdyn, kHistogram, kCce, kGradient, kValidate };
std::string to_string(Scenario s);
Scenario parse_scenario(const std::string& name);

enum class SequenceKind { kFid, kHahn, kLoschmidt, kPopdyn };
std::string to_string(SequenceKind s);
SequenceKind parse_sequence(const std::string& name);

// Field grid: the Cartesian product of the three axes (theta slowest, then
// phi, then amplitude). A single field is a one-point grid.
struct FieldGrid {
  std::vector<double> amplitudes;  // T
  std::vector<double> thetas;      // rad
  std::vector<double> phis;        // rad

  std::size_t size() const { return amplitudes.size() * thetas.size() * phis.size(); }
  // Point i in grid order; throws DomainError for invalid angles.
  FieldSpec at(std::size_t i) const;
};

enum class CohMethod { kThreshold, kStretched };

struct RunConfig {
  std::string species_path;
  std::string bath_species_path;
  std::string positions_path;
  int bath_n = 5;
  FieldGrid grid;
  SequenceKind sequence = SequenceKind::kFid;
  PulseSpec pulse;     // excitation pulse
  PulseSpec pi_pulse;  // Hahn refocusing pulse
  double horizon_s = 8e-3;
  double step_s = 1e-6;
  ExtractionOptions analysis;
  bool auto_cutoff = true;  // cutoff = half the central Zeeman frequency when not given
  CohMethod method = CohMethod::kThreshold;
  BathTermPolicy bath_policy = BathTermPolicy::kFlipFlop;
  CouplingModel coupling = CouplingModel::kFull;
  double bath_polarization = 0.0;
  std::optional<int> popdyn_initial;
  double freq_floor = 1e-6;
  int histogram_spins = 10;
  int histogram_up = 5;
  std::string out_dir = "out";
  int parallelism = 1;
  bool svg = true;
  bool write_traces = true;  // per-point trace CSVs (cohmap writes only the map by default)

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Parses a JSON run configuration (comments allowed). Relative file paths are
// resolved against `base_dir`. Throws ConfigError / ParseError.
RunConfig parse_run_config(std::istream& in, const std::string& base_dir = ".");
RunConfig load_run_config(const std::string& path);

// Applies a dotted override (`field.B`, `field.theta`, `field.phi`, `bath.n`,
// `seq`, `out`). Field overrides collapse the corresponding grid axis.
void apply_override(RunConfig& config, const std::string& key, const std::string& value);

// Output directory from the environment, if set.
std::optional<std::string> output_dir_from_env();

}  // namespace spinbath
