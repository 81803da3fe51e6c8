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

#include <cmath>
#include <sstream>

#include "spinbath/csv.hpp"
#include "spinbath/geometry.hpp"

using namespace spinbath;

TEST_CASE("field spec maps angles onto the lab frame") {
  const FieldSpec d1(60e-6, kPi / 2, 0.0);
  CHECK((field_vector(d1) - Vec3(60e-6, 0, 0)).norm() < 1e-18);
  const FieldSpec d2(1.0, kPi / 2, kPi / 2);
  CHECK((d2.direction() - LabFrame::d2()).norm() < 1e-15);
  const FieldSpec b(1.0, 0.0, 1.234);
  CHECK((b.direction() - LabFrame::b()).norm() < 1e-15);
  CHECK(FieldSpec(0.0, 0.3, 0.2).direction().norm() == doctest::Approx(1.0));
  CHECK(FieldSpec(1.0, 0.0, kTwoPi).phi() == 0.0);
}

TEST_CASE("field spec rejects out-of-domain values") {
  CHECK_THROWS_AS(FieldSpec(-1e-6, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(FieldSpec(1e-6, -0.1, 0.0), DomainError);
  CHECK_THROWS_AS(FieldSpec(1e-6, 3.2, 0.0), DomainError);
  CHECK_THROWS_AS(FieldSpec(1e-6, 1.0, 7.0), DomainError);
  CHECK_THROWS_AS(FieldSpec(NAN, 1.0, 1.0), DomainError);
}

TEST_CASE("position table is sorted by distance and truncated") {
  std::istringstream in(
      "label,x_angstrom,y_angstrom,z_angstrom\n"
      "# comment lines are skipped\n"
      "far,10,0,0\n"
      "near,0,3.5,0\n"
      "mid,0,0,-5\n"
      "tie,3.5,0,0\n");
  const BathGeometry g = load_bath_geometry(in, 3);
  REQUIRE(g.size() == 3);
  CHECK(g[0].label == "near");
  CHECK(g[1].label == "tie");  // equal distance keeps input order
  CHECK(g[2].label == "mid");
  CHECK(g[0].distance == doctest::Approx(3.5e-10));
  CHECK((g[2].position - Vec3(0, 0, -5e-10)).norm() < 1e-22);
}

TEST_CASE("position table errors carry line numbers") {
  std::istringstream missing("label,x_angstrom,y_angstrom\nA,1,2\n");
  CHECK_THROWS_AS(load_bath_geometry(missing, 5), ParseError);
  std::istringstream bad("label,x_angstrom,y_angstrom,z_angstrom\nA,1,2,3\nB,1,x,3\n");
  try {
    load_bath_geometry(bad, 5);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::istringstream zero("label,x_angstrom,y_angstrom,z_angstrom\nA,0,0,0\n");
  CHECK_THROWS_AS(load_bath_geometry(zero, 5), GeometryError);
  std::istringstream ragged("label,x_angstrom,y_angstrom,z_angstrom\nA,1,2\n");
  CHECK_THROWS_AS(load_bath_geometry(ragged, 5), ParseError);
}

TEST_CASE("shipped synthetic positions respect the hard-core distance") {
  const BathGeometry g = load_bath_geometry_file(std::string(SPINBATH_DATA_DIR) + "/positions/y_synthetic.csv", 1000);
  REQUIRE(g.size() >= 30);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(g[i].distance >= 3.4e-10 - 1e-14);
    for (std::size_t j = i + 1; j < std::min<std::size_t>(g.size(), 40); ++j)
      CHECK((g[i].position - g[j].position).norm() >= 3.4e-10 - 1e-14);
  }
}

TEST_CASE("subsite image is a pi rotation about b") {
  const BathGeometry g({{"a", Vec3(1e-10, 2e-10, 3e-10), 0.0}});
  const BathGeometry img = subsite_image(g);
  CHECK((img[0].position - Vec3(-1e-10, -2e-10, 3e-10)).norm() < 1e-24);
  CHECK((c2_rotation() * c2_rotation() - Mat3::Identity()).norm() < 1e-15);
}

TEST_CASE("quantization frame is orthonormal and right handed") {
  for (const Vec3& z : {Vec3(0, 0, 1), Vec3(1, 0, 0), Vec3(0.3, -0.5, 0.8), Vec3(0, 0, -1)}) {
    const Mat3 f = quantization_frame(z);
    CHECK((f.transpose() * f - Mat3::Identity()).norm() < 1e-14);
    CHECK(f.determinant() == doctest::Approx(1.0));
    CHECK((f.col(2) - z.normalized()).norm() < 1e-15);
  }
  const PolarAngles pa = polar_angles(Vec3(0, 0, 2), Vec3(0, 0, 1));
  CHECK(pa.theta == doctest::Approx(0.0));
  const PolarAngles eq = polar_angles(Vec3(0, 1, 0), Vec3(0, 0, 1));
  CHECK(eq.theta == doctest::Approx(kPi / 2));
}

TEST_CASE("csv round trip is byte stable") {
  std::ostringstream out;
  {
    CsvWriter w(out, {"a", "b", "c"});
    w << 0.1 << 0.0 << "x";
    w.end_row();
    w << 1e-300 << -2.5 << 3;
    w.end_row();
  }
  CHECK(out.str() == "a,b,c\n0.1,0,x\n1e-300,-2.5,3\n");
  std::istringstream in(out.str());
  const CsvTable t = read_csv(in);
  REQUIRE(t.rows.size() == 2);
  CHECK(parse_double(t.rows[1][0]) == 1e-300);
  CHECK(*t.column_index("c") == 2);
  CHECK_THROWS_AS(parse_double("1.0abc"), ParseError);
  CHECK(format_double(0.1 + 0.2) == "0.30000000000000004");
}
