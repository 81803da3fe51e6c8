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

#include "spinbath/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spinbath/csv.hpp"

namespace spinbath {

FieldSpec::FieldSpec(double amplitude_tesla, double theta, double phi)
    : amplitude_(amplitude_tesla), theta_(theta), phi_(phi) {
  if (!std::isfinite(amplitude_tesla) || amplitude_tesla < 0.0)
    throw DomainError("field amplitude must be finite and >= 0");
  if (!std::isfinite(theta) || theta < 0.0 || theta > kPi)
    throw DomainError("field theta must lie in [0, pi]");
  if (!std::isfinite(phi) || phi < 0.0 || phi > kTwoPi)
    throw DomainError("field phi must lie in [0, 2 pi)");
  if (phi_ == kTwoPi) phi_ = 0.0;
}

Vec3 FieldSpec::direction() const {
  return Vec3(std::cos(phi_) * std::sin(theta_), std::sin(phi_) * std::sin(theta_),
              std::cos(theta_));
}

Vec3 field_vector(const FieldSpec& spec) { return spec.amplitude() * spec.direction(); }

BathGeometry::BathGeometry(std::vector<BathSite> sites) : sites_(std::move(sites)) {
  for (auto& s : sites_) {
    if (!s.position.allFinite())
      throw GeometryError("bath site '" + s.label + "' has non-finite coordinates");
    s.distance = s.position.norm();
    if (s.distance == 0.0)
      throw GeometryError("bath site '" + s.label + "' coincides with the central ion");
  }
  std::stable_sort(sites_.begin(), sites_.end(),
                   [](const BathSite& a, const BathSite& b) { return a.distance < b.distance; });
}

BathGeometry BathGeometry::truncated(std::size_t max_ions) const {
  BathGeometry out;
  out.sites_.assign(sites_.begin(),
                    sites_.begin() + static_cast<std::ptrdiff_t>(std::min(max_ions, sites_.size())));
  return out;
}

BathGeometry load_bath_geometry(std::istream& in, std::size_t max_ions) {
  CsvTable table = read_csv(in);
  const auto col = [&](const std::string& name) {
    auto idx = table.column_index(name);
    if (!idx) throw ParseError("position table: missing column '" + name + "'");
    return *idx;
  };
  const std::size_t c_label = col("label");
  const std::size_t c_x = col("x_angstrom");
  const std::size_t c_y = col("y_angstrom");
  const std::size_t c_z = col("z_angstrom");

  std::vector<BathSite> sites;
  sites.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::size_t line = table.line_numbers[i];
    if (row.size() != table.header.size())
      throw ParseError("position table line " + std::to_string(line) + ": expected " +
                       std::to_string(table.header.size()) + " fields, got " +
                       std::to_string(row.size()));
    BathSite site;
    site.label = row[c_label];
    try {
      site.position = Vec3(parse_double(row[c_x]), parse_double(row[c_y]), parse_double(row[c_z])) *
                      constants::kAngstrom;
    } catch (const ParseError& e) {
      throw ParseError("position table line " + std::to_string(line) + ": " + e.what());
    }
    if (site.position.norm() == 0.0)
      throw GeometryError("position table line " + std::to_string(line) +
                          ": zero-distance entry '" + site.label + "'");
    sites.push_back(std::move(site));
  }
  return BathGeometry(std::move(sites)).truncated(max_ions);
}

BathGeometry load_bath_geometry_file(const std::string& path, std::size_t max_ions) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open position table '" + path + "'");
  return load_bath_geometry(in, max_ions);
}

Mat3 c2_rotation() { return Eigen::Vector3d(-1.0, -1.0, 1.0).asDiagonal(); }

BathGeometry subsite_image(const BathGeometry& geom) {
  std::vector<BathSite> sites = geom.sites();
  const Mat3 rot = c2_rotation();
  for (auto& s : sites) s.position = rot * s.position;
  return BathGeometry(std::move(sites));
}

Mat3 quantization_frame(const Vec3& z_axis) {
  const Vec3 z = z_axis.normalized();
  // For z = b this yields x = D1, y = D2.
  const Vec3 ref = std::abs(z.z()) > 0.9 ? Vec3::UnitX() : Vec3::UnitZ();
  Vec3 x = (ref - ref.dot(z) * z).normalized();
  Vec3 y = z.cross(x);
  Mat3 frame;
  frame.col(0) = x;
  frame.col(1) = y;
  frame.col(2) = z;
  return frame;
}

PolarAngles polar_angles(const Vec3& r, const Vec3& z_axis) {
  const Mat3 frame = quantization_frame(z_axis);
  const Vec3 local = frame.transpose() * r;
  const double rn = local.norm();
  const double theta = std::acos(std::clamp(local.z() / rn, -1.0, 1.0));
  double phi = std::atan2(local.y(), local.x());
  if (phi < 0.0) phi += kTwoPi;
  return {theta, phi};
}

}  // namespace spinbath
