#include "dfemlab/mesh_gen.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dfem {

Mesh quarter_plate_hole_mesh(int n, double L, double a, double grading) {
  if (n < 2) throw std::invalid_argument("quarter_plate_hole_mesh: n >= 2");
  if (a <= 0.0 || a >= L)
    throw std::invalid_argument("quarter_plate_hole_mesh: 0 < a < L");

  // inner boundary: quarter circle from (a,0) to (0,a); outer boundary:
  // (L,0) -> (L,L) -> (0,L)
  auto inner = [&](double t) {
    const double th = 0.5 * M_PI * t;
    return Vec2{a * std::cos(th), a * std::sin(th)};
  };
  auto outer = [&](double t) {
    if (t <= 0.5) return Vec2{L, 2.0 * t * L};
    return Vec2{(2.0 - 2.0 * t) * L, L};
  };

  std::vector<Vec2> nodes;
  nodes.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double s = std::pow(double(i) / (n - 1), grading);
    for (int j = 0; j < n; ++j) {
      const double t = double(j) / (n - 1);
      nodes.push_back(inner(t) * (1.0 - s) + outer(t) * s);
    }
  }
  std::vector<std::array<int, 3>> tris;
  auto id = [n](int i, int j) { return i * n + j; };
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j + 1 < n; ++j) {
      tris.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
      tris.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return make_mesh(std::move(nodes), std::move(tris));
}

Mesh centered_square_mesh(int intervals, double size, double distortion,
                          std::uint64_t seed) {
  Mesh m = generate_structured(intervals, intervals, size, size, distortion, seed);
  for (Vec2& p : m.nodes) p += Vec2{-size / 2.0, -size / 2.0};
  return m;
}

Mesh shifted_rect_mesh(int nx, int ny, double w, double h, double x0, double y0) {
  Mesh m = generate_structured(nx, ny, w, h);
  for (Vec2& p : m.nodes) p += Vec2{x0, y0};
  return m;
}

Mesh centered_slit_mesh(int intervals, double size) {
  if (intervals % 2 != 0)
    throw std::invalid_argument("centered_slit_mesh: intervals must be even");
  const int n = intervals + 1, mid = intervals / 2;
  const double h = size / intervals;
  std::vector<Vec2> nodes;
  auto base_id = [n](int i, int j) { return j * n + i; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      nodes.push_back({i * h - size / 2.0, j * h - size / 2.0});

  // duplicate the crack-face nodes (y = 0, x < 0); the tip node is shared
  std::vector<int> dup(n * n, -1);
  for (int i = 0; i < mid; ++i) {
    dup[base_id(i, mid)] = static_cast<int>(nodes.size());
    nodes.push_back(nodes[base_id(i, mid)]);
  }

  std::vector<std::array<int, 3>> tris;
  auto emit = [&](std::array<int, 3> t) {
    Vec2 c{0, 0};
    for (int v : t) c += nodes[v] / 3.0;
    if (c.y > 0.0)
      for (int& v : t)
        if (dup[v] >= 0) v = dup[v];
    tris.push_back(t);
  };
  for (int j = 0; j < intervals; ++j)
    for (int i = 0; i < intervals; ++i) {
      emit({base_id(i, j), base_id(i + 1, j), base_id(i, j + 1)});
      emit({base_id(i + 1, j), base_id(i + 1, j + 1), base_id(i, j + 1)});
    }
  return make_mesh(std::move(nodes), std::move(tris));
}

Mesh carve_holes(const Mesh& mesh, const std::vector<Hole>& holes) {
  std::vector<std::array<int, 3>> kept;
  for (int e = 0; e < mesh.triangle_count(); ++e) {
    const Vec2 c = mesh.centroid(e);
    bool inside = false;
    for (const Hole& hole : holes)
      if (distance(c, hole.center) < hole.radius) inside = true;
    if (!inside) kept.push_back(mesh.triangles[e]);
  }
  std::vector<int> remap(mesh.node_count(), -1);
  std::vector<Vec2> nodes;
  for (auto& t : kept)
    for (int& v : t) {
      if (remap[v] < 0) {
        remap[v] = static_cast<int>(nodes.size());
        nodes.push_back(mesh.nodes[v]);
      }
      v = remap[v];
    }
  return make_mesh(std::move(nodes), std::move(kept));
}

}  // namespace dfem
