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

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "spinbath/types.hpp"

namespace spinbath {

// Crystal lab frame. Vectors are always expressed in (D1, D2, b) order; b is
// the C2 axis of the host.
struct LabFrame {
  static Vec3 d1() { return Vec3::UnitX(); }
  static Vec3 d2() { return Vec3::UnitY(); }
  static Vec3 b() { return Vec3::UnitZ(); }
};

// Static field in spherical coordinates: theta from b, phi from D1 in the
// (D1, D2) plane.
class FieldSpec {
 public:
  FieldSpec() = default;
  // Throws DomainError when amplitude < 0 or angles are outside
  // theta in [0, pi], phi in [0, 2 pi). phi = 2 pi is wrapped to 0.
  FieldSpec(double amplitude_tesla, double theta, double phi);

  double amplitude() const { return amplitude_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }
  Vec3 direction() const;

 private:
  double amplitude_ = 0.0;
  double theta_ = 0.0;
  double phi_ = 0.0;
};

Vec3 field_vector(const FieldSpec& spec);

struct BathSite {
  std::string label;
  Vec3 position;  // meters, relative to the central ion
  double distance = 0.0;
};

// Bath positions sorted by ascending distance from the central ion.
class BathGeometry {
 public:
  BathGeometry() = default;
  // Sorts stably by distance; throws GeometryError on r == 0 or non-finite
  // coordinates.
  explicit BathGeometry(std::vector<BathSite> sites);

  std::size_t size() const { return sites_.size(); }
  bool empty() const { return sites_.empty(); }
  const BathSite& operator[](std::size_t i) const { return sites_[i]; }
  const std::vector<BathSite>& sites() const { return sites_; }
  auto begin() const { return sites_.begin(); }
  auto end() const { return sites_.end(); }

  BathGeometry truncated(std::size_t max_ions) const;

 private:
  std::vector<BathSite> sites_;
};

// Reads `label,x_angstrom,y_angstrom,z_angstrom` CSV (header required) and
// keeps the max_ions nearest sites. Equal distances keep input order.
BathGeometry load_bath_geometry(std::istream& in, std::size_t max_ions);
BathGeometry load_bath_geometry_file(const std::string& path, std::size_t max_ions);

// Image of the geometry on the other magnetic subsite: pi rotation about b.
BathGeometry subsite_image(const BathGeometry& geom);

// Rotation matrix of the C2 operation relating the two magnetic subsites.
Mat3 c2_rotation();

// Polar angles of r relative to the quantization axis z_axis; the azimuth
// reference is an arbitrary but fixed perpendicular axis.
struct PolarAngles {
  double theta;
  double phi;
};
PolarAngles polar_angles(const Vec3& r, const Vec3& z_axis);

// Orthonormal triad (x, y, z) with z = z_axis; x is chosen deterministically.
Mat3 quantization_frame(const Vec3& z_axis);

}  // namespace spinbath
