#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dfemlab/mesh.hpp"
#include "dfemlab/mesh_gen.hpp"

using namespace dfem;

namespace {

std::string write_temp(const std::string& text) {
  static int counter = 0;
  const auto path = std::filesystem::temp_directory_path() /
                    ("dfemlab_mesh_" + std::to_string(counter++) + ".txt");
  std::ofstream out(path);
  out << text;
  return path.string();
}

}  // namespace

TEST_CASE("load_mesh: single unit right triangle") {
  const Mesh m = load_mesh(write_temp(
      "$Nodes\n3\n1 0 0\n2 1 0\n3 0 1\n$Elements\n1\n1 1 2 3\n$End\n"));
  CHECK(m.node_count() == 3);
  CHECK(m.triangle_count() == 1);
  CHECK(m.boundary_edges.size() == 3);
  CHECK(m.triangle_area(0) == doctest::Approx(0.5));
}

TEST_CASE("load_mesh: clockwise triangle is reoriented") {
  const Mesh m = load_mesh(write_temp(
      "$Nodes\n3\n1 0 0\n2 1 0\n3 0 1\n$Elements\n1\n1 1 3 2\n$End\n"));
  CHECK(m.triangle_area(0) > 0.0);
}

TEST_CASE("load_mesh: degenerate triangle rejected") {
  CHECK_THROWS(load_mesh(write_temp(
      "$Nodes\n3\n1 0 0\n2 1 0\n3 2 0\n$Elements\n1\n1 1 2 3\n$End\n")));
}

TEST_CASE("load_mesh: dangling node index rejected") {
  CHECK_THROWS(load_mesh(write_temp(
      "$Nodes\n3\n1 0 0\n2 1 0\n3 0 1\n$Elements\n1\n1 1 2 4\n$End\n")));
}

TEST_CASE("structured 11x11-node square: counts from the construction") {
  // 10x10 cells -> 2(n-1)^2 triangles, 4(n-1) boundary edges
  const Mesh m = generate_structured(10, 10, 1.0, 1.0);
  CHECK(m.node_count() == 121);
  CHECK(m.triangle_count() == 200);
  CHECK(m.boundary_edges.size() == 40);
}

TEST_CASE("generate_structured: basic shapes and the Timoshenko mesh") {
  const Mesh tiny = generate_structured(1, 1, 1.0, 1.0);
  CHECK(tiny.node_count() == 4);
  CHECK(tiny.triangle_count() == 2);

  const Mesh beam = generate_structured(10, 3, 48.0, 12.0);
  CHECK(beam.node_count() == 44);

  const Mesh dist = generate_structured(4, 4, 1.0, 1.0, 0.3, 7);
  for (int e = 0; e < dist.triangle_count(); ++e)
    CHECK(dist.triangle_area(e) > 0.0);
  CHECK(dist.total_area() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("patch weights follow the area fractions") {
  // interior node of a uniform structured mesh has 6 equal triangles
  const Mesh m = generate_structured(4, 4, 1.0, 1.0);
  const auto patches = build_patches(m);
  int interior = -1;
  for (int n = 0; n < m.node_count(); ++n)
    if (patches[n].elements.size() == 6) interior = n;
  REQUIRE(interior >= 0);
  for (double w : patches[interior].weights)
    CHECK(w == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  // boundary corner with a single adjacent triangle
  int corner = -1;
  for (int n = 0; n < m.node_count(); ++n)
    if (patches[n].elements.size() == 1) corner = n;
  REQUIRE(corner >= 0);
  CHECK(patches[corner].weights[0] == doctest::Approx(1.0).epsilon(1e-14));

  for (const auto& p : patches) {
    double sum = 0.0;
    for (double w : p.weights) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("patch weights for areas {1, 3} are {0.25, 0.75}") {
  // two triangles sharing edge (0,0)-(1,0); the second has 3x the area
  std::vector<Vec2> nodes{{0, 0}, {1, 0}, {0.5, 2.0}, {0.5, -6.0}};
  std::vector<std::array<int, 3>> tris{{0, 1, 2}, {0, 3, 1}};
  const Mesh m = make_mesh(nodes, tris);
  CHECK(m.triangle_area(0) == doctest::Approx(1.0));
  CHECK(m.triangle_area(1) == doctest::Approx(3.0));
  const auto patches = build_patches(m);
  CHECK(patches[0].weights[0] == doctest::Approx(0.25));
  CHECK(patches[0].weights[1] == doctest::Approx(0.75));
}

TEST_CASE("support sets") {
  SUBCASE("single triangle: its own vertices") {
    std::vector<Vec2> nodes{{0, 0}, {1, 0}, {0, 1}};
    const Mesh m = make_mesh(nodes, {{0, 1, 2}});
    const auto patches = build_patches(m);
    const SupportSet s = support_set(m, patches, 0);
    CHECK(s.nodes == std::vector<int>{0, 1, 2});
  }
  SUBCASE("structured interior element reaches 12 nodes") {
    const Mesh m = generate_structured(6, 6, 1.0, 1.0);
    const auto patches = build_patches(m);
    int interior = -1;
    for (int e = 0; e < m.triangle_count(); ++e) {
      const Vec2 c = m.centroid(e);
      if (distance(c, {0.5, 0.5}) < 0.12) interior = e;
    }
    REQUIRE(interior >= 0);
    const SupportSet s = support_set(m, patches, interior);
    CHECK(s.nodes.size() == 12);
    // support always contains the element vertices
    for (int v : m.triangles[interior])
      CHECK(std::find(s.nodes.begin(), s.nodes.end(), v) != s.nodes.end());
  }
  SUBCASE("boundary element has fewer support nodes than interior") {
    const Mesh m = generate_structured(6, 6, 1.0, 1.0);
    const auto patches = build_patches(m);
    const SupportSet corner = support_set(m, patches, 0);
    CHECK(corner.nodes.size() < 12);
  }
}

TEST_CASE("mesh save/load round-trip is bit-identical") {
  const Mesh m = generate_structured(3, 2, 2.0, 1.0, 0.25, 42);
  const auto p1 = write_temp("");
  save_mesh(m, p1);
  const Mesh m2 = load_mesh(p1);
  const auto p2 = write_temp("");
  save_mesh(m2, p2);
  std::ifstream f1(p1), f2(p2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(!s1.str().empty());
}

TEST_CASE("generated rectangle areas sum to the domain area") {
  const Mesh m = generate_structured(7, 5, 3.5, 2.0, 0.3, 99);
  CHECK(m.total_area() == doctest::Approx(7.0).epsilon(1e-10));
}

TEST_CASE("carve_holes drops triangles and compacts nodes") {
  const Mesh m = generate_structured(10, 10, 10.0, 10.0);
  const Mesh carved = carve_holes(m, {{{5.0, 5.0}, 1.5}});
  CHECK(carved.triangle_count() < m.triangle_count());
  CHECK(carved.node_count() <= m.node_count());
  carved.total_area();  // finalize succeeded
}
