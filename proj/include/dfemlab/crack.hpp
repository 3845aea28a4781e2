#pragma once

#include <array>
#include <vector>

#include "dfemlab/basis.hpp"
#include "dfemlab/mesh.hpp"

namespace dfem {

/// Oriented crack polyline; the tip is the last vertex.
struct CrackPath {
  std::vector<Vec2> vertices;

  Vec2 tip() const { return vertices.back(); }
  /// Tangent direction of the last segment, radians.
  double tip_angle() const;
  void validate() const;  // throws on fewer than 2 or repeated vertices
};

/// Tip-aligned frame: local x1 points along the crack extension, the
/// crack faces map to theta = +-pi.
struct TipFrame {
  Vec2 origin;
  double angle = 0.0;  // of the extension direction
  double c = 1.0, s = 0.0;

  Vec2 to_local(Vec2 g) const {
    const Vec2 d = g - origin;
    return {c * d.x + s * d.y, -s * d.x + c * d.y};
  }
  Vec2 vec_to_global(Vec2 l) const { return {c * l.x - s * l.y, s * l.x + c * l.y}; }
  struct Polar {
    double r = 0.0, theta = 0.0;
  };
  Polar polar(Vec2 g) const {
    const Vec2 l = to_local(g);
    return {l.norm(), std::atan2(l.y, l.x)};
  }
};

TipFrame tip_frame(const CrackPath& crack);

/// +1 left of the oriented polyline, -1 right; points on the crack get +1.
int heaviside(const CrackPath& crack, Vec2 p);

/// The four near-tip branch functions and their global-frame gradients.
struct BranchEval {
  std::array<double, 4> f{};
  std::array<Vec2, 4> grad{};
};

/// Throws std::domain_error at r = 0.
BranchEval branch_functions(const TipFrame& frame, Vec2 p);

enum class EnrichKind : char { none = 0, heaviside = 1, tip = 2 };

struct EnrichmentScheme {
  enum class Mode { topological, fixed_area };
  Mode mode = Mode::topological;
  double radius = 0.0;  // fixed_area only

  static EnrichmentScheme topological() { return {}; }
  static EnrichmentScheme fixed_area(double r) {
    return {Mode::fixed_area, r};
  }
};

struct NodeEnrichment {
  std::vector<EnrichKind> kind;   // per node
  std::vector<char> element_cut;  // per element: fully cut by the crack
  int tip_element = -1;           // -1 when the tip is outside the mesh
  EnrichmentScheme scheme;

  int count(EnrichKind k) const;
  bool any() const { return tip_element >= 0 || count(EnrichKind::heaviside) > 0; }
};

NodeEnrichment classify_nodes(const Mesh& mesh, const CrackPath& crack,
                              EnrichmentScheme scheme);

/// Conforming sub-triangulation of a crack-intersected element whose
/// sub-triangle interiors do not straddle the crack (or, near the tip,
/// its extension line); tip-containing elements are fanned around the tip.
std::vector<std::array<Vec2, 3>> subdivide_cut_element(const Mesh& mesh,
                                                       int element,
                                                       const CrackPath& crack);

/// Every enriched node plus every node of every cut element.
DegenerationSet degeneration_from_enrichment(const NodeEnrichment& enrichment,
                                             const Mesh& mesh,
                                             const CrackPath& crack);

}  // namespace dfem
