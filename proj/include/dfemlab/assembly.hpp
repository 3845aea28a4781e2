#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "dfemlab/basis.hpp"
#include "dfemlab/crack.hpp"
#include "dfemlab/dofmap.hpp"
#include "dfemlab/material.hpp"
#include "dfemlab/quadrature.hpp"
#include "dfemlab/sparse.hpp"

namespace dfem {

struct QuadratureConfig {
  int t3_degree = 1;     // uncut 3-node elements
  int dfem_degree = 5;   // uncut double-interpolation elements
  int tip_degree = 8;    // any cell with branch-enriched DOFs
  int edge_degree = 6;   // boundary tractions
  bool almost_polar = false;  // Duffy rule on tip-vertex subcells
  int almost_polar_points = 4;
};

/// Crack state preprocessed for assembly: node classification, tip frame,
/// nodal enrichment values and quadrature subcells of intersected elements.
struct EnrichedModel {
  CrackPath crack;
  NodeEnrichment enrichment;
  TipFrame frame;
  std::vector<int> h_at_node;
  std::vector<std::array<double, 4>> f_at_node;
  std::vector<std::vector<std::array<Vec2, 3>>> subcells;  // empty: uncut

  static EnrichedModel build(const Mesh& mesh, const CrackPath& crack,
                             EnrichmentScheme scheme);
};

struct LoadCase {
  struct Dirichlet {
    int node, comp;
    double value;
  };
  struct PointLoad {
    int node, comp;
    double value;
  };
  std::vector<Dirichlet> dirichlet;
  /// Traction per tagged boundary edge (index into mesh.boundary_edges).
  std::vector<std::pair<int, std::function<Vec2(Vec2)>>> tractions;
  std::vector<PointLoad> point_loads;
  std::function<Vec2(Vec2)> body_force;  // optional
};

/// Column layout of one element block: two u columns per support node,
/// then a/b blocks for the enriched support nodes.
struct ElementDofs {
  std::vector<int> global;
  std::vector<int> a_col, b_col;  // per support index; -1 when absent
  int count() const { return static_cast<int>(global.size()); }
};

ElementDofs element_dofs(const Basis& basis, const DofMap& dofmap,
                         const NodeEnrichment* enr, int element);

/// Strain-displacement blocks of a single support node.
Eigen::Matrix<double, 3, 2> b_matrix_std(const ShapeEval& shape, int idx);
Eigen::Matrix<double, 3, 2> b_matrix_heaviside(const ShapeEval& shape, int idx,
                                               int h_at_point, int h_at_node);
Eigen::Matrix<double, 3, 8> b_matrix_tip(const ShapeEval& shape, int idx,
                                         const BranchEval& branch,
                                         const std::array<double, 4>& f_node);

struct ElementMatrix {
  Eigen::MatrixXd K;
  ElementDofs dofs;
};

ElementMatrix element_stiffness(const Basis& basis, const EnrichedModel* enr,
                                const DofMap& dofmap, const Material& material,
                                int element,
                                const QuadratureConfig& quad = {});

struct System {
  SparseMatrix K;
  Eigen::VectorXd f;
  DofMap dofmap;
};

System assemble(const Basis& basis, const EnrichedModel* enr,
                const Material& material, const LoadCase& load,
                const QuadratureConfig& quad = {});

/// Symmetric elimination of every Dirichlet entry; throws on conflicting
/// duplicates.
void apply_dirichlet(System& system,
                     const std::vector<LoadCase::Dirichlet>& entries);

/// Displacement and displacement gradient of a solved state at one point.
/// heaviside_hint (+-1) selects the crack side for points on a subcell of
/// a cut element; 0 evaluates the sign from the point itself.
struct FieldEval {
  Vec2 u;
  Eigen::Matrix2d grad;
};

FieldEval evaluate_solution(const Basis& basis, const EnrichedModel* enr,
                            const DofMap& dofmap, const Eigen::VectorXd& d,
                            int element, Vec2 p, int heaviside_hint = 0);

/// Voigt stress (sxx, syy, txy) from a field evaluation.
Eigen::Vector3d stress_at(const FieldEval& f, const Material& material);

}  // namespace dfem
