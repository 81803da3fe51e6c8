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


#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "spinbath/config.hpp"
#include "spinbath/runner.hpp"

namespace {

constexpr int kExitUsage = 2;

struct Overrides {
  std::optional<std::string> field_b, field_theta, field_phi, bath_n, seq, out;
  std::optional<int> jobs;
  bool no_svg = false;
};

void add_common(CLI::App* cmd, std::string& config_path, Overrides& o) {
  cmd->add_option("-c,--config", config_path, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--field.B", o.field_b, "Field amplitude (T); replaces the grid axis");
  cmd->add_option("--field.theta", o.field_theta, "Polar angle from b (rad)");
  cmd->add_option("--field.phi", o.field_phi, "Azimuth from D1 in the (D1, D2) plane (rad)");
  cmd->add_option("--bath.n", o.bath_n, "Number of nearest bath ions");
  cmd->add_option("--seq", o.seq, "Sequence: fid, hahn, loschmidt or popdyn");
  cmd->add_option("--out", o.out, "Output directory (overrides SPINBATH_OUT)");
  cmd->add_option("-j,--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--no-svg", o.no_svg, "Skip SVG plot files");
}

spinbath::RunConfig resolve_config(const std::string& path, const Overrides& o) {
  spinbath::RunConfig c = spinbath::load_run_config(path);
  if (auto env = spinbath::output_dir_from_env()) c.out_dir = *env;
  const std::pair<const char*, const std::optional<std::string>*> keys[] = {
      {"field.B", &o.field_b}, {"field.theta", &o.field_theta}, {"field.phi", &o.field_phi},
      {"bath.n", &o.bath_n},   {"seq", &o.seq},                 {"out", &o.out}};
  for (const auto& [key, value] : keys)
    if (*value) spinbath::apply_override(c, key, **value);
  if (o.jobs) c.parallelism = *o.jobs;
  if (o.no_svg) c.svg = false;
  c.validate();
  return c;
}

const char* level_name(spinbath::Diagnostic::Level l) {
  switch (l) {
    case spinbath::Diagnostic::Level::kInfo:
      return "info";
    case spinbath::Diagnostic::Level::kWarning:
      return "warning";
    case spinbath::Diagnostic::Level::kError:
      return "error";
  }
  return "?";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Central-spin decoherence simulator for rare-earth ions in a nuclear spin bath"};
  app.require_subcommand(1);
  std::string config_path;
  Overrides overrides;

  const std::pair<const char*, const char*> commands[] = {
      {"decay", "Coherence decay for the configured sequence at every grid point"},
      {"hahn", "Hahn-echo decay at every grid point"},
      {"loschmidt", "Loschmidt (frozen central spin) decay at every grid point"},
      {"freqmap", "Dynamical-frequency weights classified by branch"},
      {"cohmap", "Coherence-time map over the field grid"},
      {"popdyn", "Populations of the uncoupled levels versus time"},
      {"histogram", "Flip-flop energy histogram of the fixed-projection sector"},
      {"cce", "First-order cluster-correlation decay (echo and Loschmidt)"},
      {"gradient", "Transition-frequency gradient norms over the field grid"},
      {"validate", "Dimension and memory estimates with warnings"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_common(cmd, config_path, overrides);
    subs.push_back(cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const spinbath::Scenario scenario = spinbath::parse_scenario(name);
    if (scenario == spinbath::Scenario::kValidate) {
      spinbath::RunConfig c = spinbath::load_run_config(config_path);
      if (auto env = spinbath::output_dir_from_env()) c.out_dir = *env;
      bool errors = false;
      try {
        c = resolve_config(config_path, overrides);
      } catch (const spinbath::Error& e) {
        std::cout << "error: " << e.what() << '\n';
        errors = true;
      }
      for (const auto& d : spinbath::validate_run(c)) {
        std::cout << level_name(d.level) << ": " << d.message << '\n';
        errors = errors || d.level == spinbath::Diagnostic::Level::kError;
      }
      return errors ? kExitUsage : 0;
    }
    const spinbath::RunConfig config = resolve_config(config_path, overrides);
    const spinbath::RunManifest manifest = spinbath::run(config, scenario);
    for (const auto& t : manifest.tasks) {
      std::cerr << "[" << t.index << "] B=" << t.field.amplitude() << " T theta=" << t.field.theta()
                << " phi=" << t.field.phi() << ": " << (t.status == spinbath::TaskStatus::kOk ? "ok" : "FAILED");
      if (t.estimate) std::cerr << " T=" << t.estimate->t_s << " s" << (t.estimate->valid ? "" : " (invalid)");
      if (!t.message.empty()) std::cerr << " (" << t.message << ")";
      std::cerr << '\n';
    }
    std::cerr << manifest.tasks.size() << " task(s), " << manifest.failed() << " failed; outputs in "
              << config.out_dir << '\n';
    return spinbath::exit_code(manifest);
  } catch (const spinbath::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const spinbath::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
