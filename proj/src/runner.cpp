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


#include "spinbath/runner.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <mutex>
#include <sstream>
#include <thread>

#include "spinbath/approximations.hpp"
#include "spinbath/csv.hpp"
#include "spinbath/filters.hpp"
#include "spinbath/gradient.hpp"
#include "spinbath/histogram.hpp"
#include "spinbath/sequences.hpp"
#include "spinbath/svg.hpp"

namespace spinbath {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

struct OutputFile {
  std::string name;
  std::string content;
};

struct TaskResult {
  TaskRecord record;
  std::vector<OutputFile> files;
  std::string aggregate_rows;  // body rows for the scenario's aggregate CSV
};

// Immutable inputs shared by all workers.
struct Inputs {
  IonModel central;
  IonModel bath_ion;
  BathGeometry geometry;
};

Inputs load_inputs(const RunConfig& c) {
  Inputs in;
  in.central = load_species_file(c.species_path);
  in.bath_ion = c.bath_species_path.empty() ? IonModel::bare("none", 0.0) : load_species_file(c.bath_species_path);
  if (c.bath_n > 0) {
    in.geometry = load_bath_geometry_file(c.positions_path, static_cast<std::size_t>(c.bath_n));
    if (in.geometry.size() < static_cast<std::size_t>(c.bath_n))
      throw ConfigError("config: 'bath.n' = " + std::to_string(c.bath_n) + " exceeds the " +
                        std::to_string(in.geometry.size()) + " sites in '" + c.positions_path + "'");
  }
  return in;
}

std::string point_name(const std::string& stem, std::size_t index, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%04zu.", index);
  return stem + buf + ext;
}

// Drops the first line (CSV header) of a writer's output.
std::string body_of(const std::string& csv) {
  const auto nl = csv.find('\n');
  return nl == std::string::npos ? std::string() : csv.substr(nl + 1);
}

std::string header_of(const std::string& csv) {
  const auto nl = csv.find('\n');
  return nl == std::string::npos ? csv : csv.substr(0, nl + 1);
}

SystemAssembly assemble(const RunConfig& c, const Inputs& in, const Vec3& field) {
  AssemblyOptions opts;
  opts.bath_policy = c.bath_policy;
  opts.coupling = c.coupling;
  opts.bath_polarization = c.bath_polarization;
  return assemble_system(in.central, in.bath_ion, in.geometry, field, opts);
}

SequenceKind effective_sequence(const RunConfig& c, Scenario s) {
  switch (s) {
    case Scenario::kHahn:
      return SequenceKind::kHahn;
    case Scenario::kLoschmidt:
      return SequenceKind::kLoschmidt;
    case Scenario::kPopdyn:
      return SequenceKind::kPopdyn;
    default:
      return c.sequence;
  }
}

DecayTrace compute_trace(const RunConfig& c, const SystemAssembly& sys, SequenceKind seq) {
  const std::vector<double> times = uniform_times(c.horizon_s, c.step_s);
  switch (seq) {
    case SequenceKind::kHahn: {
      std::vector<double> delays(times.size());
      std::transform(times.begin(), times.end(), delays.begin(), [](double t) { return 0.5 * t; });
      return hahn_echo(sys, c.pulse, c.pi_pulse, delays);
    }
    case SequenceKind::kLoschmidt:
      return loschmidt_decay(sys, times);
    default:
      return fid_decay(sys, c.pulse, times);
  }
}

CoherenceEstimate estimate_of(const RunConfig& c, const SystemAssembly& sys, const DecayTrace& trace) {
  ExtractionOptions opts = c.analysis;
  if (!opts.cutoff_hz && c.auto_cutoff) {
    const double cut = auto_cutoff_hz(sys);
    if (cut > 0.0) opts.cutoff_hz = cut;
  }
  // A cutoff the record cannot resolve is skipped rather than failing the point.
  if (opts.cutoff_hz && !lowpass_in_band(*opts.cutoff_hz, trace.step(), trace.size())) opts.cutoff_hz.reset();
  CoherenceEstimate est = extract_coherence_time(trace, opts);
  if (c.method == CohMethod::kStretched) {
    const StretchedFit fit = fit_stretched(trace, opts);
    est.method = CoherenceMethod::kStretchedFit;
    est.t_s = fit.t2_s;
    est.valid = std::isfinite(fit.t2_s) && fit.t2_s > 0.0;
    est.capped = false;
  }
  return est;
}

std::string trace_svg(const DecayTrace& trace, const std::string& title) {
  LineSeries s{"I(t)", {}, trace.intensity};
  s.x.reserve(trace.size());
  for (double t : trace.times) s.x.push_back(t * 1e3);
  return svg_line_plot({s}, title, "t (ms)", "normalized intensity");
}

std::string field_title(const FieldSpec& f) {
  std::ostringstream os;
  os << "B = " << f.amplitude() * 1e3 << " mT, theta = " << f.theta() << ", phi = " << f.phi();
  return os.str();
}

int default_popdyn_initial(const SystemAssembly& sys, const UncoupledBasis& ub) {
  int best = -1;
  for (int i = 0; i < static_cast<int>(ub.central_level.size()); ++i) {
    if (ub.central_level[i] != sys.transition.first) continue;
    if (best < 0 || std::abs(ub.bath_polarization[i]) < std::abs(ub.bath_polarization[best]) - 1e-9) best = i;
  }
  return std::max(best, 0);
}

void run_point(const RunConfig& c, Scenario scenario, const Inputs& in, TaskResult& out) {
  const FieldSpec& f = out.record.field;
  const Vec3 field = field_vector(f);
  const std::size_t idx = out.record.index;
  switch (scenario) {
    case Scenario::kDecay:
    case Scenario::kHahn:
    case Scenario::kLoschmidt:
    case Scenario::kCohmap:
    case Scenario::kPopdyn: {
      const SystemAssembly sys = assemble(c, in, field);
      const SequenceKind seq = effective_sequence(c, scenario);
      if (seq == SequenceKind::kPopdyn) {
        const UncoupledBasis ub = uncoupled_basis(sys);
        const int initial = c.popdyn_initial.value_or(default_popdyn_initial(sys, ub));
        const std::vector<double> times = uniform_times(c.horizon_s, c.step_s);
        const RMatrix pop = population_dynamics(sys, initial, times);
        std::vector<std::string> header{"t_s"};
        for (int l = 0; l < pop.rows(); ++l)
          header.push_back("p" + std::to_string(l) + "_s" + std::to_string(ub.central_level[l]) + "_b" +
                           std::to_string(ub.bath_state[l]));
        std::ostringstream os;
        CsvWriter w(os, header);
        for (std::size_t k = 0; k < times.size(); ++k) {
          w << times[k];
          for (int l = 0; l < pop.rows(); ++l) w << pop(l, static_cast<Eigen::Index>(k));
          w.end_row();
        }
        out.files.push_back({point_name("popdyn", idx, "csv"), os.str()});
        if (c.svg) {
          std::vector<LineSeries> series;
          for (int l = 0; l < pop.rows(); ++l) {
            if (pop.row(l).maxCoeff() < 0.01) continue;
            LineSeries s{header[static_cast<std::size_t>(l) + 1], {}, {}};
            for (std::size_t k = 0; k < times.size(); ++k) {
              s.x.push_back(times[k] * 1e3);
              s.y.push_back(pop(l, static_cast<Eigen::Index>(k)));
            }
            series.push_back(std::move(s));
          }
          out.files.push_back({point_name("popdyn", idx, "svg"),
                               svg_line_plot(series, field_title(f), "t (ms)", "population")});
        }
        return;
      }
      const DecayTrace trace = compute_trace(c, sys, seq);
      out.record.estimate = estimate_of(c, sys, trace);
      if (scenario != Scenario::kCohmap && c.write_traces) {
        std::ostringstream os;
        write_trace_csv(os, trace);
        out.files.push_back({point_name("trace", idx, "csv"), os.str()});
        if (c.svg) out.files.push_back({point_name("trace", idx, "svg"), trace_svg(trace, field_title(f))});
      }
      return;
    }
    case Scenario::kFreqmap: {
      const SystemAssembly sys = assemble(c, in, field);
      const EigenSystem eig = diagonalize(sys.total());
      const CMatrix factor = apply_pulse_columns(sys, c.pulse, sys.rho0_factor);
      const FrequencyDecomposition fd = frequency_decomposition(sys, eig, factor);
      const auto comps = classify_components(sys, eig, dynamical_frequencies(fd, c.freq_floor));
      std::ostringstream os;
      write_classified_csv(os, f.amplitude(), comps);
      out.aggregate_rows = body_of(os.str());
      return;
    }
    case Scenario::kCce: {
      const std::vector<double> times = uniform_times(c.horizon_s, c.step_s);
      const CceTrace hahn = cce1_total(in.central, in.bath_ion, in.geometry, field, times);
      const CceTrace losch = cce1_loschmidt_total(in.central, in.bath_ion, in.geometry, field, times);
      std::ostringstream os;
      CsvWriter w(os, {"t_s", "cce_hahn", "cce_loschmidt"});
      for (std::size_t k = 0; k < times.size(); ++k) {
        w << times[k] << hahn.total[k] << losch.total[k];
        w.end_row();
      }
      out.files.push_back({point_name("cce", idx, "csv"), os.str()});
      return;
    }
    case Scenario::kGradient: {
      const TransitionGradient g = transition_gradient(in.central, field, in.central.transition);
      std::ostringstream os;
      CsvWriter w(os, {"theta_rad", "phi_rad", "B_T", "s1_site1_hz_per_t", "s1_site2_hz_per_t", "s1_mean_hz_per_t"});
      w << f.theta() << f.phi() << f.amplitude() << g.norm1 << g.norm2 << g.mean_norm;
      w.end_row();
      out.aggregate_rows = body_of(os.str());
      return;
    }
    case Scenario::kHistogram: {
      const FlipFlopHistogram h = flipflop_histogram(in.geometry, in.bath_ion, field, c.histogram_spins, c.histogram_up);
      std::ostringstream raw;
      write_histogram_csv(raw, h);
      out.files.push_back({"histogram.csv", raw.str()});
      std::ostringstream bins;
      CsvWriter w(bins, {"bin_center_hz", "count"});
      for (std::size_t i = 0; i < h.counts.size(); ++i) {
        w << h.bin_centers_hz[i] << h.counts[i];
        w.end_row();
      }
      out.files.push_back({"histogram_bins.csv", bins.str()});
      std::ostringstream fit;
      CsvWriter wf(fit, {"states", "amplitude", "center_hz", "sigma_hz", "fwhm_hz", "degenerate"});
      wf << h.energies_hz.size() << h.gaussian.amplitude << h.gaussian.center << h.gaussian.sigma
         << (h.degenerate ? 0.0 : h.gaussian.fwhm()) << (h.degenerate ? 1 : 0);
      wf.end_row();
      out.files.push_back({"histogram_fit.csv", fit.str()});
      if (c.svg) {
        LineSeries s{"counts", h.bin_centers_hz, h.counts};
        out.files.push_back({"histogram.svg", svg_line_plot({s}, "flip-flop energies", "energy (Hz)", "count")});
      }
      return;
    }
    case Scenario::kValidate:
      return;
  }
}

std::string aggregate_header(Scenario s) {
  std::ostringstream os;
  if (s == Scenario::kFreqmap) write_classified_csv(os, 0.0, {});
  if (s == Scenario::kGradient)
    CsvWriter(os, {"theta_rad", "phi_rad", "B_T", "s1_site1_hz_per_t", "s1_site2_hz_per_t", "s1_mean_hz_per_t"});
  return header_of(os.str());
}

bool scenario_has_sweep(Scenario s) {
  return s == Scenario::kDecay || s == Scenario::kHahn || s == Scenario::kLoschmidt || s == Scenario::kCohmap;
}

void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& content) {
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file '" + (dir / name).string() + "'");
  out << content;
}

std::string cohmap_svg(const SweepResult& sweep, std::size_t ib) {
  std::vector<std::vector<double>> values(sweep.thetas.size(), std::vector<double>(sweep.phis.size(), NAN));
  for (std::size_t it = 0; it < sweep.thetas.size(); ++it)
    for (std::size_t ip = 0; ip < sweep.phis.size(); ++ip) {
      const auto& cell = sweep.at(it, ip, ib);
      if (cell && cell->estimate.valid) values[it][ip] = cell->estimate.t_s * 1e3;
    }
  std::ostringstream title;
  title << "T (ms) at B = " << sweep.amplitudes[ib] * 1e3 << " mT";
  return svg_heatmap(sweep.phis, sweep.thetas, values, title.str(), "phi (rad)", "theta (rad)");
}

json config_echo(const RunConfig& c) {
  json j;
  j["species"] = c.species_path;
  j["bath_species"] = c.bath_species_path;
  j["positions"] = c.positions_path;
  j["bath"] = {{"n", c.bath_n},
               {"policy", c.bath_policy == BathTermPolicy::kFlipFlop ? "flipflop" : "full"},
               {"coupling", c.coupling == CouplingModel::kFull ? "full" : "mean_dipole"},
               {"polarization", c.bath_polarization}};
  j["field"] = {{"B", c.grid.amplitudes}, {"theta", c.grid.thetas}, {"phi", c.grid.phis}};
  const auto pulse = [](const PulseSpec& p) {
    json pj = {{"kind", p.kind == PulseKind::kIdealRotation ? "ideal" : "adiabatic"},
               {"angle", p.angle},
               {"fwhm_s", p.fwhm_s},
               {"chirp_span_hz", p.chirp_span_hz},
               {"peak_rabi_hz", p.peak_rabi_hz},
               {"passage", p.passage == Passage::kHalf ? "half" : "full"}};
    if (p.center_hz) pj["center_hz"] = *p.center_hz;
    return pj;
  };
  j["sequence"] = {{"kind", to_string(c.sequence)}, {"pulse", pulse(c.pulse)}, {"pi_pulse", pulse(c.pi_pulse)}};
  j["time"] = {{"horizon_s", c.horizon_s}, {"step_s", c.step_s}};
  j["analysis"] = {{"threshold", c.analysis.threshold},
                   {"head_trim_s", c.analysis.head_trim_s},
                   {"tail_trim_frac", c.analysis.tail_trim_frac},
                   {"method", c.method == CohMethod::kThreshold ? "threshold" : "stretched"}};
  if (c.analysis.cutoff_hz) j["analysis"]["cutoff_hz"] = *c.analysis.cutoff_hz;
  else j["analysis"]["cutoff_hz"] = c.auto_cutoff ? json("auto") : json(nullptr);
  j["output"] = {{"dir", c.out_dir}, {"svg", c.svg}, {"traces", c.write_traces}};
  j["parallelism"] = c.parallelism;
  return j;
}

}  // namespace

std::size_t RunManifest::failed() const {
  return static_cast<std::size_t>(
      std::count_if(tasks.begin(), tasks.end(), [](const TaskRecord& t) { return t.status == TaskStatus::kFailed; }));
}

json RunManifest::to_json() const {
  json j;
  j["scenario"] = to_string(scenario);
  j["config"] = config_echo(config);
  json inputs = json::array();
  for (const auto& [path, hash] : input_hashes) inputs.push_back({{"path", path}, {"sha256", hash}});
  j["inputs"] = inputs;
  json tasks_j = json::array();
  for (const auto& t : tasks) {
    json tj = {{"index", t.index},
               {"B_T", t.field.amplitude()},
               {"theta_rad", t.field.theta()},
               {"phi_rad", t.field.phi()},
               {"status", t.status == TaskStatus::kOk ? "ok" : "failed"},
               {"seconds", t.seconds},
               {"outputs", t.outputs}};
    if (!t.message.empty()) tj["message"] = t.message;
    if (t.estimate)
      tj["coherence"] = {{"T_s", t.estimate->t_s},
                         {"valid", t.estimate->valid},
                         {"capped", t.estimate->capped},
                         {"filtered", t.estimate->filtered},
                         {"method", to_string(t.estimate->method)}};
    tasks_j.push_back(tj);
  }
  j["tasks"] = tasks_j;
  j["outputs"] = outputs;
  j["failed"] = failed();
  j["wall_seconds"] = wall_seconds;
  return j;
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "' for hashing");
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw NumericError("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

double auto_cutoff_hz(const SystemAssembly& sys) {
  double split = 0.0;
  for (int level : {sys.transition.first, sys.transition.second})
    for (int m : sys.levels.group_members(level))
      split = std::max(split, std::abs(sys.levels.energies[m] - sys.levels.energies[level]));
  return 0.5 * split;
}

std::vector<Diagnostic> validate_run(const RunConfig& c) {
  std::vector<Diagnostic> out;
  const auto add = [&](Diagnostic::Level l, std::string m) { out.push_back({l, std::move(m)}); };
  try {
    c.validate();
  } catch (const Error& e) {
    add(Diagnostic::Level::kError, e.what());
  }
  int central_dim = 0, bath_mult = 2;
  try {
    central_dim = load_species_file(c.species_path).dimension();
  } catch (const Error& e) {
    add(Diagnostic::Level::kError, e.what());
  }
  if (!c.bath_species_path.empty()) {
    try {
      bath_mult = load_species_file(c.bath_species_path).dimension();
    } catch (const Error& e) {
      add(Diagnostic::Level::kError, e.what());
    }
  }
  if (c.bath_n > 0 && !c.positions_path.empty()) {
    try {
      const auto geom = load_bath_geometry_file(c.positions_path, static_cast<std::size_t>(c.bath_n));
      if (geom.size() < static_cast<std::size_t>(c.bath_n))
        add(Diagnostic::Level::kError, "bath.n exceeds the number of listed sites (" + std::to_string(geom.size()) + ")");
    } catch (const Error& e) {
      add(Diagnostic::Level::kError, e.what());
    }
  }
  if (central_dim > 0) {
    double dim = central_dim * std::pow(static_cast<double>(bath_mult), std::max(c.bath_n, 0));
    const long long d = static_cast<long long>(dim);
    // Hamiltonian, eigenvectors and a few work matrices of complex doubles.
    const double mib = 6.0 * dim * dim * 16.0 / (1024.0 * 1024.0);
    std::ostringstream os;
    os << "dimension " << d << " (" << central_dim << " x " << bath_mult << "^" << c.bath_n << "), ~" << mib
       << " MiB per worker";
    add(Diagnostic::Level::kInfo, os.str());
    if (d > kDimensionWarning)
      add(Diagnostic::Level::kWarning, "dimension " + std::to_string(d) + " exceeds " +
                                           std::to_string(kDimensionWarning) + "; runtime and memory grow as D^3 and D^2");
  }
  const double bmax = c.grid.amplitudes.empty() ? 0.0 : *std::max_element(c.grid.amplitudes.begin(), c.grid.amplitudes.end());
  if (bmax > kFieldWarning) {
    std::ostringstream os;
    os << "field " << bmax * 1e3 << " mT exceeds " << kFieldWarning * 1e3
       << " mT; the effective-spin Hamiltonians are low-field models";
    add(Diagnostic::Level::kWarning, os.str());
  }
  std::ostringstream grid;
  grid << "grid points: " << c.grid.size();
  add(Diagnostic::Level::kInfo, grid.str());
  return out;
}

RunManifest run(const RunConfig& c, Scenario scenario) {
  c.validate();
  const auto t0 = Clock::now();
  RunManifest manifest;
  manifest.scenario = scenario;
  manifest.config = c;
  for (const std::string& p : {c.species_path, c.bath_species_path, c.positions_path})
    if (!p.empty() && (p != c.positions_path || c.bath_n > 0)) manifest.input_hashes.emplace_back(p, sha256_file(p));

  const Inputs inputs = load_inputs(c);
  const std::size_t n_tasks = scenario == Scenario::kHistogram ? std::min<std::size_t>(c.grid.size(), 1) : c.grid.size();

  std::vector<TaskResult> results(n_tasks);
  for (std::size_t i = 0; i < n_tasks; ++i) {
    results[i].record.index = i;
    try {
      results[i].record.field = c.grid.at(i);
    } catch (const Error& e) {
      results[i].record.status = TaskStatus::kFailed;
      results[i].record.message = e.what();
    }
  }

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n_tasks; i = next++) {
      TaskResult& r = results[i];
      if (r.record.status == TaskStatus::kFailed) continue;
      const auto start = Clock::now();
      try {
        run_point(c, scenario, inputs, r);
      } catch (const std::exception& e) {
        r.record.status = TaskStatus::kFailed;
        r.record.message = e.what();
        r.files.clear();
        r.aggregate_rows.clear();
      }
      r.record.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    }
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(c.parallelism), std::max<std::size_t>(n_tasks, 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // Collector: all writes happen here, in grid order.
  const std::filesystem::path dir(c.out_dir);
  std::filesystem::create_directories(dir);
  std::string aggregate = aggregate_header(scenario);
  std::vector<SweepPoint> points;
  for (auto& r : results) {
    for (const auto& f : r.files) {
      write_file(dir, f.name, f.content);
      r.record.outputs.push_back(f.name);
    }
    aggregate += r.aggregate_rows;
    if (r.record.estimate)
      points.push_back({r.record.field, *r.record.estimate, c.bath_n, to_string(effective_sequence(c, scenario)),
                        c.horizon_s});
    manifest.tasks.push_back(std::move(r.record));
  }
  if (scenario == Scenario::kFreqmap || scenario == Scenario::kGradient) {
    const std::string name = scenario == Scenario::kFreqmap ? "freqmap.csv" : "gradient.csv";
    write_file(dir, name, aggregate);
    manifest.outputs.push_back(name);
  }
  if (scenario_has_sweep(scenario)) {
    const SweepResult sweep = assemble_sweep(points);
    std::ostringstream os;
    write_sweep_csv(os, sweep);
    write_file(dir, "coherence.csv", os.str());
    manifest.outputs.push_back("coherence.csv");
    if (c.svg && scenario == Scenario::kCohmap && !points.empty())
      for (std::size_t ib = 0; ib < sweep.amplitudes.size(); ++ib) {
        const std::string name = point_name("cohmap", ib, "svg");
        write_file(dir, name, cohmap_svg(sweep, ib));
        manifest.outputs.push_back(name);
      }
  }
  manifest.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  write_file(dir, "manifest.json", manifest.to_json().dump(2) + "\n");
  return manifest;
}

int exit_code(const RunManifest& manifest) { return manifest.failed() > 0 ? 1 : 0; }

}  // namespace spinbath
