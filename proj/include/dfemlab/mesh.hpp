#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dfemlab/geometry.hpp"

namespace dfem {

struct BoundaryEdge {
  int a = -1;       // first node (CCW order along the owning triangle)
  int b = -1;       // second node
  int element = -1; // the unique triangle owning this edge
  Vec2 normal;      // outward unit normal
};

/// Immutable after finalize(): triangles are CCW, areas positive,
/// boundary edges extracted.
class Mesh {
 public:
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }

  double triangle_area(int e) const {
    const auto& t = triangles[e];
    return 0.5 * signed_area2(nodes[t[0]], nodes[t[1]], nodes[t[2]]);
  }
  Vec2 centroid(int e) const {
    const auto& t = triangles[e];
    return (nodes[t[0]] + nodes[t[1]] + nodes[t[2]]) / 3.0;
  }
  double triangle_diameter(int e) const;
  /// Bounding-box diagonal of the whole mesh.
  double diameter() const;
  double total_area() const;

  /// Reorients CW triangles, validates indices/areas, extracts boundary.
  /// Throws std::runtime_error on degenerate or inconsistent input.
  void finalize();

  /// Index of the triangle whose closure contains p, or -1.
  int find_element(Vec2 p, double tol = 1e-12) const;
};

Mesh make_mesh(std::vector<Vec2> nodes, std::vector<std::array<int, 3>> triangles);

/// Reads the plain-text format ($Nodes/$Elements sections, 1-based ids).
Mesh load_mesh(const std::string& path);
void save_mesh(const Mesh& mesh, const std::string& path);

/// Adjacent-element set of one node with area-fraction weights.
struct NodePatch {
  int node = -1;
  std::vector<int> elements;  // ascending triangle indices
  std::vector<double> weights;
};

std::vector<NodePatch> build_patches(const Mesh& mesh);

/// Nodes whose data reach into one element: its vertices plus every node
/// of every patch element of those vertices.
struct SupportSet {
  int element = -1;
  std::vector<int> nodes;  // sorted, unique
};

SupportSet support_set(const Mesh& mesh, const std::vector<NodePatch>& patches,
                       int element);

/// Structured nx-by-ny cell grid on [0,width]x[0,height], each cell split
/// along the (i+1,j)-(i,j+1) diagonal. Interior nodes are jittered by at
/// most distortion * cell size, deterministically from seed.
Mesh generate_structured(int nx, int ny, double width, double height,
                         double distortion = 0.0, std::uint64_t seed = 0);

}  // namespace dfem
