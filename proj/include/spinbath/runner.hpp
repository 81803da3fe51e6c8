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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinbath/config.hpp"
#include "spinbath/sweep.hpp"

namespace spinbath {

enum class TaskStatus { kOk, kFailed };

struct TaskRecord {
  std::size_t index = 0;
  FieldSpec field;
  TaskStatus status = TaskStatus::kOk;
  std::string message;
  double seconds = 0.0;
  std::vector<std::string> outputs;  // file names relative to the output directory
  std::optional<CoherenceEstimate> estimate;
};

struct RunManifest {
  Scenario scenario = Scenario::kDecay;
  RunConfig config;
  std::vector<std::pair<std::string, std::string>> input_hashes;  // path, SHA-256 hex
  std::vector<TaskRecord> tasks;
  std::vector<std::string> outputs;  // aggregate outputs
  double wall_seconds = 0.0;

  std::size_t failed() const;
  nlohmann::json to_json() const;
};

struct Diagnostic {
  enum class Level { kInfo, kWarning, kError };
  Level level = Level::kInfo;
  std::string message;
};

// Dimension above which a warning is issued.
inline constexpr long long kDimensionWarning = 1024;
// Field above which the low-field effective Hamiltonians are questionable (T).
inline constexpr double kFieldWarning = 10e-3;

// Dimension and memory estimates plus warnings; never throws.
std::vector<Diagnostic> validate_run(const RunConfig& config);

// Executes `scenario` over the field grid with `config.parallelism` workers
// and writes CSV (and optional SVG) outputs plus manifest.json into
// config.out_dir. Per-point numeric failures are recorded, not thrown.
// Throws ConfigError / ParseError when inputs cannot be loaded.
RunManifest run(const RunConfig& config, Scenario scenario);

// 0 when every task succeeded, 1 otherwise.
int exit_code(const RunManifest& manifest);

// Lowercase hex SHA-256 of a file's bytes; throws ParseError if unreadable.
std::string sha256_file(const std::string& path);

// Half the largest Zeeman splitting inside the zero-field groups of the
// addressed levels; zero when those levels are non-degenerate at zero field.
double auto_cutoff_hz(const SystemAssembly& sys);

}  // namespace spinbath
