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


#include "spinbath/approximations.hpp"

#include <algorithm>
#include <cmath>

#include "spinbath/csv.hpp"
#include "spinbath/dynamics.hpp"
#include "spinbath/hamiltonians.hpp"

namespace spinbath {

namespace {

void require_nondegenerate(const CentralLevels& lv, int level) {
  const double spread = lv.energies.maxCoeff() - lv.energies.minCoeff();
  const double tol = 1e-9 * spread + 1e-6;
  for (int k = 0; k < lv.size(); ++k)
    if (k != level && std::abs(lv.energies[k] - lv.energies[level]) < tol)
      throw NumericError("frozen-spin regime invalid: addressed level " + std::to_string(level) +
                         " is degenerate at this field");
}

void require_bare_half(const IonModel& bath_ion) {
  if (bath_ion.kind != IonKind::kBare || bath_ion.dimension() != 2)
    throw ConfigError("cluster approximations require a bare spin-1/2 bath species");
}

// 2x2 bath Hamiltonian (Hz) for an effective field.
CMatrix zeeman2(const IonModel& bath_ion, const Vec3& b) { return moment_operator(bath_ion).along(b); }

}  // namespace

FrozenMoments frozen_moments(const IonModel& central, const Vec3& field) {
  const CentralLevels lv = label_central_levels(central, field);
  const auto [a, b] = central.transition;
  require_nondegenerate(lv, a);
  require_nondegenerate(lv, b);
  const MomentOperator m = moment_operator(central);
  return {m.expectation(lv.vectors.col(a)), m.expectation(lv.vectors.col(b))};
}

Vec3 dipole_field(const Vec3& moment_hz_per_t, const Vec3& r) { return dipolar_tensor(r) * moment_hz_per_t; }

EffectiveFieldPair effective_fields(const FrozenMoments& moments, const IonModel& bath_ion, const Vec3& position,
                                    const Vec3& field) {
  require_bare_half(bath_ion);
  EffectiveFieldPair p;
  p.b_minus = field + dipole_field(moments.minus, position);
  p.b_plus = field + dipole_field(moments.plus, position);
  const double gamma = std::abs(bath_ion.gamma_hz_per_t);
  p.delta_minus = gamma * p.b_minus.norm();
  p.delta_plus = gamma * p.b_plus.norm();
  const double nm = p.b_minus.norm(), np = p.b_plus.norm();
  p.theta = (nm > 0.0 && np > 0.0) ? std::acos(std::clamp(p.b_minus.dot(p.b_plus) / (nm * np), -1.0, 1.0)) : 0.0;
  return p;
}

EffectiveFieldPair effective_fields(const IonModel& central, const IonModel& bath_ion, const Vec3& position,
                                    const Vec3& field) {
  return effective_fields(frozen_moments(central, field), bath_ion, position, field);
}

std::vector<double> cce1_cluster(const EffectiveFieldPair& pair, const std::vector<double>& times) {
  const double s2 = std::pow(std::sin(pair.theta), 2);
  std::vector<double> e(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    e[k] = 1.0 - 0.5 * s2 * (1.0 - std::cos(kTwoPi * pair.delta_minus * t)) *
                     (1.0 - std::cos(kTwoPi * pair.delta_plus * t));
  }
  return e;
}

std::vector<cplx> brute_cluster_echo(const FrozenMoments& moments, const IonModel& bath_ion, const Vec3& position,
                                     const Vec3& field, const std::vector<double>& times) {
  require_bare_half(bath_ion);
  const CMatrix hm = zeeman2(bath_ion, field + dipole_field(moments.minus, position));
  const CMatrix hp = zeeman2(bath_ion, field + dipole_field(moments.plus, position));
  const EigenSystem em = diagonalize(hm), ep = diagonalize(hp);
  std::vector<cplx> out(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    const CMatrix prod = em.propagator(t) * ep.propagator(t) * em.propagator(-t) * ep.propagator(-t);
    out[k] = 0.5 * prod.trace();
  }
  return out;
}

std::vector<cplx> loschmidt_cluster(const FrozenMoments& moments, const IonModel& bath_ion, const Vec3& position,
                                    const Vec3& field, const std::vector<double>& times) {
  require_bare_half(bath_ion);
  const EigenSystem em = diagonalize(zeeman2(bath_ion, field + dipole_field(moments.minus, position)));
  const EigenSystem ep = diagonalize(zeeman2(bath_ion, field + dipole_field(moments.plus, position)));
  std::vector<cplx> out(times.size());
  for (std::size_t k = 0; k < times.size(); ++k)
    out[k] = 0.5 * (em.propagator(-times[k]) * ep.propagator(times[k])).trace();
  return out;
}

CceTrace cce1_total(const IonModel& central, const IonModel& bath_ion, const BathGeometry& geom, const Vec3& field,
                    const std::vector<double>& times) {
  const FrozenMoments fm = frozen_moments(central, field);
  CceTrace tr;
  tr.times = times;
  tr.total.assign(times.size(), 1.0);
  for (const auto& site : geom) {
    tr.clusters.push_back(cce1_cluster(effective_fields(fm, bath_ion, site.position, field), times));
    for (std::size_t k = 0; k < times.size(); ++k) tr.total[k] *= tr.clusters.back()[k];
  }
  return tr;
}

CceTrace cce1_loschmidt_total(const IonModel& central, const IonModel& bath_ion, const BathGeometry& geom,
                              const Vec3& field, const std::vector<double>& times) {
  const FrozenMoments fm = frozen_moments(central, field);
  CceTrace tr;
  tr.times = times;
  tr.total.assign(times.size(), 1.0);
  for (const auto& site : geom) {
    const auto l = loschmidt_cluster(fm, bath_ion, site.position, field, times);
    std::vector<double> e(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
      e[k] = std::norm(l[k]);
      tr.total[k] *= e[k];
    }
    tr.clusters.push_back(std::move(e));
  }
  return tr;
}

double fermi_rate(double nu, double delta) {
  if (!(delta > 0.0)) throw DomainError("fermi_rate: level spacing must be > 0");
  return kTwoPi * nu * nu / delta;
}

SpectrumBranches frozen_spin_spectrum(const IonModel& central, const IonModel& bath_ion, const BathGeometry& geom,
                                      const std::vector<Vec3>& fields, const AssemblyOptions& options) {
  SpectrumBranches br;
  br.fields = fields;
  const int n = central.dimension() * static_cast<int>(std::pow(bath_ion.dimension(), geom.size()));
  br.exact.resize(static_cast<Eigen::Index>(fields.size()), n);
  br.frozen.resize(static_cast<Eigen::Index>(fields.size()), n);
  for (std::size_t i = 0; i < fields.size(); ++i) {
    AssemblyOptions full = options, md = options;
    full.coupling = CouplingModel::kFull;
    md.coupling = CouplingModel::kMeanDipole;
    const SystemAssembly sys = assemble_system(central, bath_ion, geom, fields[i], full);
    const EigenSystem ex = diagonalize(sys.total());
    const CMatrix h_md = sys.h0 + central_diagonal_blocks(sys.h_int, sys.levels.vectors, sys.bath_dim);
    const EigenSystem fr = diagonalize(h_md);
    br.exact.row(static_cast<Eigen::Index>(i)) = ex.values.transpose();
    br.frozen.row(static_cast<Eigen::Index>(i)) = fr.values.transpose();
    if (i + 1 == fields.size()) {
      const int db = sys.bath_dim;
      const CMatrix in_basis = apply_central_left(sys.levels.vectors.adjoint(), fr.vectors, db);
      br.level_group.assign(static_cast<std::size_t>(n), 0);
      for (int l = 0; l < n; ++l) {
        int best = 0;
        double best_w = -1.0;
        for (int s = 0; s < sys.central_dim; ++s) {
          const double w = in_basis.col(l).segment(s * db, db).squaredNorm();
          if (w > best_w) {
            best_w = w;
            best = s;
          }
        }
        br.level_group[static_cast<std::size_t>(l)] = sys.levels.group[static_cast<std::size_t>(best)];
      }
    }
  }
  return br;
}

RMatrix subtract_group_means(const RMatrix& values, const std::vector<int>& group) {
  RMatrix out = values;
  if (group.empty()) return out;
  const int ng = *std::max_element(group.begin(), group.end()) + 1;
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    std::vector<double> sum(static_cast<std::size_t>(ng), 0.0);
    std::vector<int> cnt(static_cast<std::size_t>(ng), 0);
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      sum[static_cast<std::size_t>(group[static_cast<std::size_t>(c)])] += values(r, c);
      ++cnt[static_cast<std::size_t>(group[static_cast<std::size_t>(c)])];
    }
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      const auto g = static_cast<std::size_t>(group[static_cast<std::size_t>(c)]);
      out(r, c) -= sum[g] / cnt[g];
    }
  }
  return out;
}

void write_branches_csv(std::ostream& out, const SpectrumBranches& br) {
  CsvWriter w(out, {"B_T", "level_index", "lambda_exact_hz", "lambda_frozen_hz"});
  for (std::size_t i = 0; i < br.fields.size(); ++i)
    for (Eigen::Index l = 0; l < br.exact.cols(); ++l) {
      w << br.fields[i].norm() << static_cast<long long>(l) << br.exact(static_cast<Eigen::Index>(i), l)
        << br.frozen(static_cast<Eigen::Index>(i), l);
      w.end_row();
    }
}

}  // namespace spinbath
