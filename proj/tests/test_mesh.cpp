#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wavebem/mesh.hpp"

using namespace wavebem;

TEST_CASE("uniform mesh hits both endpoints exactly") {
  const LateralMesh m = uniform_mesh(3.0, 6.0, 16);
  CHECK(m.left_elements() == 16);
  CHECK(m.right_elements() == 16);
  CHECK(m.total_elements() == 32);
  CHECK(m.left_breaks.front() == 0.0);
  CHECK(m.left_breaks.back() == 6.0);
  CHECK(m.right_breaks == m.left_breaks);
  CHECK(m.max_width() == doctest::Approx(6.0 / 16).epsilon(1e-15));
  CHECK_THROWS_AS(uniform_mesh(3.0, 6.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(uniform_mesh(-1.0, 6.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(uniform_mesh(3.0, 0.0, 4), std::invalid_argument);
}

TEST_CASE("validate rejects malformed strands") {
  LateralMesh m = uniform_mesh(3.0, 6.0, 4);
  CHECK_NOTHROW(m.validate());

  LateralMesh bad_start = m;
  bad_start.left_breaks[0] = 0.25;
  CHECK_THROWS_AS(bad_start.validate(), std::invalid_argument);

  LateralMesh bad_end = m;
  bad_end.right_breaks.back() = 5.75;
  CHECK_THROWS_AS(bad_end.validate(), std::invalid_argument);

  LateralMesh unordered = m;
  std::swap(unordered.left_breaks[1], unordered.left_breaks[2]);
  CHECK_THROWS_AS(unordered.validate(), std::invalid_argument);

  LateralMesh empty = m;
  empty.left_breaks = {0.0};
  CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
}

TEST_CASE("slice count is the ceiling of the horizon over the crossing time") {
  CHECK(slice_count(3.0, 6.0).n == 2);
  CHECK(slice_count(3.0, 6.1).n == 3);
  CHECK(slice_count(3.0, 5.9).n == 2);
  CHECK(slice_count(3.0, 3.0).n == 1);
  CHECK(slice_count(3.0, 2.0 * std::numbers::pi).n == 3);

  const TimeSlices s = slice_count(3.0, 6.1);
  REQUIRE(s.slices.size() == 3);
  CHECK(s.slices[0].first == 0.0);
  CHECK(s.slices[1].first == doctest::Approx(3.0));
  CHECK(s.slices[2].second == doctest::Approx(6.1));
}

TEST_CASE("slice shift compatibility for uniform meshes") {
  CHECK(satisfies_slice_shift(uniform_mesh(3.0, 6.0, 16)));
  CHECK(satisfies_slice_shift(refine(uniform_mesh(3.0, 6.0, 16))));
  // an odd element count puts breakpoints where the shifted image has none
  CHECK_FALSE(satisfies_slice_shift(uniform_mesh(3.0, 6.0, 3)));
  // T not a multiple of L fails regardless of the partitions
  CHECK_FALSE(satisfies_slice_shift(uniform_mesh(3.0, 6.5, 13)));
}

TEST_CASE("shifted pair meshes match at zero tolerance") {
  const LateralMesh m = shifted_pair_mesh(3.0, 3, {1.0}, {2.0});
  CHECK(m.T == doctest::Approx(9.0));
  CHECK(satisfies_slice_shift(m, 0.0));
  CHECK(satisfies_slice_shift(refine(m)));

  // seeds alternate between the slices, opposite phase on the two strands
  auto contains = [](const std::vector<double>& v, double x) {
    for (double b : v)
      if (std::abs(b - x) < 1e-14) return true;
    return false;
  };
  CHECK(contains(m.left_breaks, 1.0));
  CHECK(contains(m.left_breaks, 3.0 + 2.0));
  CHECK(contains(m.right_breaks, 2.0));
  CHECK(contains(m.right_breaks, 3.0 + 1.0));

  // disturbing one strand breaks the pairing
  LateralMesh off = m;
  off.left_breaks.insert(off.left_breaks.begin() + 1, 0.5);
  CHECK_FALSE(satisfies_slice_shift(off));
}

TEST_CASE("non-smooth starting mesh has the documented shape") {
  const LateralMesh m = nonuniform_initial_mesh();
  CHECK(m.L == 3.0);
  CHECK(m.T == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(m.left_elements() == 40);
  CHECK(m.right_elements() == 24);
  CHECK_NOTHROW(m.validate());
  // each strand is uniform on its own
  const double h0 = m.left_breaks[1] - m.left_breaks[0];
  for (int e = 0; e < 40; ++e)
    CHECK(m.left_breaks[e + 1] - m.left_breaks[e] == doctest::Approx(h0).epsilon(1e-12));
}

TEST_CASE("refinement bisects every element") {
  const LateralMesh m = shifted_pair_mesh(3.0, 2, {1.0}, {2.0});
  const LateralMesh r = refine(m);
  CHECK(r.left_elements() == 2 * m.left_elements());
  CHECK(r.right_elements() == 2 * m.right_elements());
  for (int e = 0; e < m.left_elements(); ++e) {
    CHECK(r.left_breaks[2 * e] == m.left_breaks[e]);
    CHECK(r.left_breaks[2 * e + 1] ==
          doctest::Approx(0.5 * (m.left_breaks[e] + m.left_breaks[e + 1])));
  }
}

TEST_CASE("json roundtrip preserves the mesh bit for bit") {
  for (const LateralMesh& m :
       {uniform_mesh(3.0, 6.0, 10), shifted_pair_mesh(3.0, 2, {0.7}, {1.9}),
        nonuniform_initial_mesh()}) {
    const LateralMesh back = mesh_from_json(mesh_to_json(m));
    CHECK(back.L == m.L);
    CHECK(back.T == m.T);
    CHECK(back.left_breaks == m.left_breaks);
    CHECK(back.right_breaks == m.right_breaks);
  }
  CHECK_THROWS_AS(mesh_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(mesh_from_json("{\"L\": 3}"), std::invalid_argument);
  CHECK_THROWS_AS(
      mesh_from_json("{\"L\":3,\"T\":1,\"left_breaks\":[0,2,1],\"right_breaks\":[0,1]}"),
      std::invalid_argument);
}
