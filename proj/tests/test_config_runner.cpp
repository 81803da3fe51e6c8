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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spinbath/config.hpp"
#include "spinbath/runner.hpp"

using namespace spinbath;
namespace fs = std::filesystem;

namespace {

const std::string kData = SPINBATH_DATA_DIR;

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in, kData + "/configs");
}

std::string base_config(const std::string& extra = "") {
  return R"({
    // Eu with a small bath
    "species": "../species/eu.json",
    "bath_species": "../species/y.json",
    "positions": "../positions/y_synthetic.csv",
    "bath": {"n": 2},
    "field": {"B": [1e-5, 4e-5, 6e-5], "theta": 1.5707963267948966},
    "time": {"horizon_s": 2e-3, "step_s": 1e-5})" +
         extra + "}";
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("spinbath_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("run configuration parsing") {
  const RunConfig c = parse(base_config(R"(, "analysis": {"cutoff_hz": "none", "method": "stretched"},
      "sequence": {"kind": "hahn", "pulse": {"kind": "adiabatic", "fwhm_s": 1e-4}}, "parallelism": 3)"));
  CHECK(c.bath_n == 2);
  CHECK(c.grid.size() == 3);
  CHECK(c.grid.at(1).amplitude() == doctest::Approx(4e-5));
  CHECK(c.grid.at(1).theta() == doctest::Approx(kPi / 2));
  CHECK(c.sequence == SequenceKind::kHahn);
  CHECK(c.pulse.kind == PulseKind::kAdiabaticChirp);
  CHECK(c.pulse.fwhm_s == doctest::Approx(1e-4));
  CHECK(c.pi_pulse.angle == doctest::Approx(kPi));
  CHECK(c.pi_pulse.passage == Passage::kFull);
  CHECK_FALSE(c.auto_cutoff);
  CHECK(c.method == CohMethod::kStretched);
  CHECK(c.parallelism == 3);
  CHECK(fs::path(c.species_path).filename() == "eu.json");
  CHECK(fs::exists(c.species_path));
  CHECK(parse_scenario("cohmap") == Scenario::kCohmap);
  CHECK_THROWS_AS(parse_scenario("nope"), ConfigError);
}

TEST_CASE("field axes accept ranges") {
  const RunConfig c = parse(R"({"species": "../species/eu.json", "bath": {"n": 0},
      "field": {"B": {"start": 0, "stop": 1e-4, "count": 5}, "phi": {"start": 0, "stop": 6.283185307179586, "count": 4, "endpoint": false}}})");
  CHECK(c.grid.amplitudes.size() == 5);
  CHECK(c.grid.amplitudes.back() == doctest::Approx(1e-4));
  CHECK(c.grid.phis.size() == 4);
  CHECK(c.grid.phis.back() == doctest::Approx(1.5 * kPi));
  // theta slowest, then phi, then B.
  CHECK(c.grid.at(1).amplitude() == doctest::Approx(2.5e-5));
  CHECK(c.grid.at(5).phi() == doctest::Approx(0.5 * kPi));
}

TEST_CASE("configuration errors name the offending field") {
  const auto message = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(R"({"species": "x", "bath": {"n": 0}, "time": {"horizon_s": -1}})").find("time.horizon_s") != std::string::npos);
  CHECK(message(R"({"species": "x", "bath": {"n": 3}})").find("positions") != std::string::npos);
  CHECK(message(R"({"species": "x", "bath": {"n": 0}, "field": {"B": [1e-5, 1e-5]}})").find("field.B") != std::string::npos);
  CHECK(message(R"({"species": "x", "bath": {"n": 0}, "field": {"theta": 4}})").find("field.theta") != std::string::npos);
  CHECK(message(R"({"species": "x", "bath": {"n": 0}, "analysis": {"threshold": 1.5}})").find("analysis.threshold") !=
        std::string::npos);
  CHECK(message(R"({"species": "x", "bath": {"policy": "odd"}})").find("bath.policy") != std::string::npos);
  CHECK(message(R"({"bath": {"n": 0}})").find("species") != std::string::npos);
  std::istringstream bad("{ not json");
  CHECK_THROWS_AS(parse_run_config(bad), ParseError);
}

TEST_CASE("overrides replace single values and revalidate") {
  RunConfig c = parse(base_config());
  apply_override(c, "field.B", "2e-5");
  CHECK(c.grid.amplitudes == std::vector<double>{2e-5});
  apply_override(c, "bath.n", "4");
  CHECK(c.bath_n == 4);
  apply_override(c, "seq", "loschmidt");
  CHECK(c.sequence == SequenceKind::kLoschmidt);
  apply_override(c, "out", "elsewhere");
  CHECK(c.out_dir == "elsewhere");
  CHECK_THROWS_AS(apply_override(c, "bath.n", "2.5"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "field.B", "abc"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "field.theta", "-1"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "nope", "1"), ConfigError);
}

TEST_CASE("dimension estimates and warnings") {
  const auto dims = [](const std::string& species, int n, double b) {
    RunConfig c = parse(base_config());
    c.species_path = kData + "/species/" + species;
    c.bath_n = n;
    c.grid.amplitudes = {b};
    return validate_run(c);
  };
  const auto has = [](const std::vector<Diagnostic>& d, const std::string& text, Diagnostic::Level level) {
    for (const auto& x : d)
      if (x.level == level && x.message.find(text) != std::string::npos) return true;
    return false;
  };
  CHECK(has(dims("eu.json", 7, 1e-5), "dimension 768", Diagnostic::Level::kInfo));
  CHECK(has(dims("yb.json", 7, 1e-5), "dimension 512", Diagnostic::Level::kInfo));
  const auto big = dims("eu.json", 12, 1e-5);
  bool warned = false;
  for (const auto& d : big) warned |= d.level == Diagnostic::Level::kWarning;
  CHECK(warned);
  bool field_warn = false;
  for (const auto& d : dims("eu.json", 2, 2e-2)) field_warn |= d.level == Diagnostic::Level::kWarning;
  CHECK(field_warn);
  RunConfig missing = parse(base_config());
  missing.species_path = "/nonexistent/species.json";
  CHECK(has(validate_run(missing), "", Diagnostic::Level::kError));
}

TEST_CASE("sha256 of a known file") {
  const fs::path dir = fresh_dir("sha");
  fs::create_directories(dir);
  std::ofstream(dir / "abc.txt", std::ios::binary) << "abc";
  CHECK(sha256_file((dir / "abc.txt").string()) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK_THROWS_AS(sha256_file((dir / "missing").string()), ParseError);
}

TEST_CASE("an empty grid runs no tasks") {
  RunConfig c = parse(base_config());
  c.grid.amplitudes.clear();
  c.out_dir = fresh_dir("empty").string();
  const RunManifest m = run(c, Scenario::kDecay);
  CHECK(m.tasks.empty());
  CHECK(exit_code(m) == 0);
  CHECK(fs::exists(fs::path(c.out_dir) / "manifest.json"));
}

TEST_CASE("sweep results do not depend on the worker count") {
  RunConfig c = parse(base_config());
  c.svg = false;
  c.out_dir = fresh_dir("serial").string();
  c.parallelism = 1;
  const RunManifest serial = run(c, Scenario::kDecay);
  c.out_dir = fresh_dir("parallel").string();
  c.parallelism = 3;
  const RunManifest parallel = run(c, Scenario::kDecay);
  REQUIRE(serial.tasks.size() == 3);
  CHECK(exit_code(serial) == 0);
  CHECK(exit_code(parallel) == 0);
  for (const char* f : {"coherence.csv", "trace_0000.csv", "trace_0002.csv"})
    CHECK(slurp(fs::path(serial.config.out_dir) / f) == slurp(fs::path(parallel.config.out_dir) / f));
  const auto j = serial.to_json();
  CHECK(j.at("tasks").size() == 3);
  CHECK(j.at("inputs").size() == 3);
}

TEST_CASE("sweep assembly rejects duplicate points") {
  SweepPoint p;
  p.field = FieldSpec(1e-4, 0.5, 1.0);
  CHECK_THROWS_AS(assemble_sweep({p, p}), AggregationError);
  SweepPoint q = p;
  q.field = FieldSpec(2e-4, 0.5, 1.0);
  const SweepResult s = assemble_sweep({q, p});
  CHECK(s.size() == 2);
  CHECK(s.missing() == 0);
  CHECK(s.at(0, 0, 0)->field.amplitude() == doctest::Approx(1e-4));
  std::ostringstream os;
  write_sweep_csv(os, s);
  CHECK(os.str().rfind("theta_rad,phi_rad,B_T,T_s,valid\n", 0) == 0);
}
