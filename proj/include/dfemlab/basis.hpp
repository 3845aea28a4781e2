#pragma once

#include <array>
#include <utility>
#include <vector>

#include "dfemlab/mesh.hpp"

namespace dfem {

/// Barycentric coordinates of a point in a triangle together with the
/// geometric coefficients of the linear maps L_i(x,y).
struct AreaCoords {
  std::array<double, 3> L{};  // barycentric values at the point
  std::array<double, 3> a{};  // a_i = x_j*y_k - x_k*y_j
  std::array<double, 3> b{};  // b_i = y_j - y_k
  std::array<double, 3> c{};  // c_i = x_k - x_j
  double area = 0.0;
};

/// Throws std::domain_error if the point is outside the closed triangle
/// (barycentric tolerance 1e-12).
AreaCoords area_coordinates(const Mesh& mesh, int element, Vec2 p);
AreaCoords area_coordinates(const std::array<Vec2, 3>& v, Vec2 p);

/// The cubic re-interpolation basis of one triangle: for each vertex slot
/// the value-type function phi, the x-slope function psi and the y-slope
/// function phit, with their cartesian gradients at the evaluation point.
/// They satisfy phi_i(x_l) = delta_il, psi_i,x(x_l) = delta_il,
/// phit_i,y(x_l) = delta_il with all cross terms zero.
struct BasisTriplet {
  std::array<double, 3> phi{}, psi{}, phit{};
  std::array<Vec2, 3> grad_phi{}, grad_psi{}, grad_phit{};
};

BasisTriplet basis_triplet(const AreaCoords& ac);

/// Per-node C0 flags: a flagged node uses the host element's own gradient
/// instead of the patch average.
struct DegenerationSet {
  std::vector<char> flags;

  static DegenerationSet none(int node_count) {
    return DegenerationSet{std::vector<char>(node_count, 0)};
  }
  static DegenerationSet all(int node_count) {
    return DegenerationSet{std::vector<char>(node_count, 1)};
  }
  bool degenerated(int node) const { return flags[node] != 0; }
  int count() const;
};

/// Shape function values and gradients at one point, over the element's
/// support node set.
struct ShapeEval {
  const std::vector<int>* support = nullptr;  // node indices
  std::vector<double> value, grad_x, grad_y;

  int size() const { return static_cast<int>(value.size()); }
};

/// Sparse row of averaged (or degenerated) hat-gradients at a node:
/// pairs (node, gx, gy).
struct GradientRow {
  std::vector<int> nodes;
  std::vector<Vec2> grads;
};

GradientRow averaged_gradient_row(const Mesh& mesh,
                                  const std::vector<NodePatch>& patches,
                                  const DegenerationSet& degeneration,
                                  int node, int host_element);

/// Unified T3 / double-interpolation evaluation. The double-interpolation
/// variant precomputes support sets and nodal gradient rows per element;
/// evaluation afterwards is pure and reentrant.
class Basis {
 public:
  enum class Kind { t3, dfem };

  Basis(const Mesh& mesh, const std::vector<NodePatch>& patches,
        DegenerationSet degeneration, Kind kind);

  Kind kind() const { return kind_; }
  const Mesh& mesh() const { return *mesh_; }
  const DegenerationSet& degeneration() const { return degeneration_; }
  const std::vector<int>& support(int element) const;
  /// Quadrature degree that integrates grad(N)^T C grad(N) exactly.
  int stiffness_degree() const { return kind_ == Kind::t3 ? 1 : 5; }

  ShapeEval eval(int element, Vec2 p) const;

 private:
  const Mesh* mesh_;
  DegenerationSet degeneration_;
  Kind kind_;
  std::vector<std::vector<int>> support_;  // per element
  // per element, per vertex slot: averaged gradient of every support node
  std::vector<std::array<std::vector<Vec2>, 3>> rows_;
};

}  // namespace dfem
