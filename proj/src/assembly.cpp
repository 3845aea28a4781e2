#include "dfemlab/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dfem {

EnrichedModel EnrichedModel::build(const Mesh& mesh, const CrackPath& crack,
                                   EnrichmentScheme scheme) {
  EnrichedModel m;
  m.crack = crack;
  m.enrichment = classify_nodes(mesh, crack, scheme);
  m.frame = tip_frame(crack);
  m.h_at_node.resize(mesh.node_count());
  m.f_at_node.assign(mesh.node_count(), {0.0, 0.0, 0.0, 0.0});
  for (int n = 0; n < mesh.node_count(); ++n) {
    m.h_at_node[n] = heaviside(crack, mesh.nodes[n]);
    if (m.enrichment.kind[n] == EnrichKind::tip)
      m.f_at_node[n] = branch_functions(m.frame, mesh.nodes[n]).f;
  }
  m.subcells.resize(mesh.triangle_count());
  for (int e = 0; e < mesh.triangle_count(); ++e)
    if (m.enrichment.element_cut[e] || e == m.enrichment.tip_element)
      m.subcells[e] = subdivide_cut_element(mesh, e, crack);
  return m;
}

ElementDofs element_dofs(const Basis& basis, const DofMap& dofmap,
                         const NodeEnrichment* enr, int element) {
  const auto& sup = basis.support(element);
  const int ns = static_cast<int>(sup.size());
  ElementDofs out;
  out.a_col.assign(ns, -1);
  out.b_col.assign(ns, -1);
  for (int s = 0; s < ns; ++s) {
    out.global.push_back(dofmap.u(sup[s], 0));
    out.global.push_back(dofmap.u(sup[s], 1));
  }
  if (!enr) return out;
  for (int s = 0; s < ns; ++s)
    if (dofmap.has_a(sup[s])) {
      out.a_col[s] = static_cast<int>(out.global.size());
      out.global.push_back(dofmap.a(sup[s], 0));
      out.global.push_back(dofmap.a(sup[s], 1));
    }
  for (int s = 0; s < ns; ++s)
    if (dofmap.has_b(sup[s])) {
      out.b_col[s] = static_cast<int>(out.global.size());
      for (int k = 0; k < 8; ++k) out.global.push_back(dofmap.b(sup[s], k / 2, k % 2));
    }
  return out;
}

Eigen::Matrix<double, 3, 2> b_matrix_std(const ShapeEval& shape, int idx) {
  Eigen::Matrix<double, 3, 2> B = Eigen::Matrix<double, 3, 2>::Zero();
  const double gx = shape.grad_x[idx], gy = shape.grad_y[idx];
  B(0, 0) = gx;
  B(1, 1) = gy;
  B(2, 0) = gy;
  B(2, 1) = gx;
  return B;
}

Eigen::Matrix<double, 3, 2> b_matrix_heaviside(const ShapeEval& shape, int idx,
                                               int h_at_point, int h_at_node) {
  // H is piecewise constant off the crack, so the shifted derivative is
  // grad(N) * (H - H_I) on each subcell
  return b_matrix_std(shape, idx) * double(h_at_point - h_at_node);
}

Eigen::Matrix<double, 3, 8> b_matrix_tip(const ShapeEval& shape, int idx,
                                         const BranchEval& branch,
                                         const std::array<double, 4>& f_node) {
  Eigen::Matrix<double, 3, 8> B = Eigen::Matrix<double, 3, 8>::Zero();
  const double n = shape.value[idx];
  const double ngx = shape.grad_x[idx], ngy = shape.grad_y[idx];
  for (int a = 0; a < 4; ++a) {
    const double shifted = branch.f[a] - f_node[a];
    const double dx = ngx * shifted + n * branch.grad[a].x;
    const double dy = ngy * shifted + n * branch.grad[a].y;
    B(0, 2 * a) = dx;
    B(1, 2 * a + 1) = dy;
    B(2, 2 * a) = dy;
    B(2, 2 * a + 1) = dx;
  }
  return B;
}

namespace {

struct Cell {
  std::array<Vec2, 3> v;
  double area;
  int h_sign;
};

std::vector<Cell> integration_cells(const Basis& basis,
                                    const EnrichedModel* enr, int element) {
  std::vector<Cell> cells;
  const Mesh& mesh = basis.mesh();
  if (enr && !enr->subcells[element].empty()) {
    for (const auto& t : enr->subcells[element]) {
      Cell c{t, 0.5 * std::abs(signed_area2(t[0], t[1], t[2])), 1};
      c.h_sign = heaviside(enr->crack, (t[0] + t[1] + t[2]) / 3.0);
      cells.push_back(c);
    }
  } else {
    const auto& t = mesh.triangles[element];
    Cell c{{mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]},
           mesh.triangle_area(element), 1};
    if (enr) c.h_sign = heaviside(enr->crack, mesh.centroid(element));
    cells.push_back(c);
  }
  return cells;
}

bool has_tip_dofs(const ElementDofs& dofs) {
  for (int b : dofs.b_col)
    if (b >= 0) return true;
  return false;
}

// Build the full B matrix (3 x ndof) at one quadrature point.
void fill_b_matrix(const Basis& basis, const EnrichedModel* enr,
                   const ElementDofs& dofs, int element, Vec2 p, int h_sign,
                   const ShapeEval& shape, Eigen::MatrixXd& B) {
  B.setZero();
  const auto& sup = basis.support(element);
  const int ns = static_cast<int>(sup.size());
  std::optional<BranchEval> branch;
  if (enr && has_tip_dofs(dofs)) branch = branch_functions(enr->frame, p);
  for (int s = 0; s < ns; ++s) {
    B.block<3, 2>(0, 2 * s) = b_matrix_std(shape, s);
    if (dofs.a_col[s] >= 0)
      B.block<3, 2>(0, dofs.a_col[s]) =
          b_matrix_heaviside(shape, s, h_sign, enr->h_at_node[sup[s]]);
    if (dofs.b_col[s] >= 0)
      B.block<3, 8>(0, dofs.b_col[s]) =
          b_matrix_tip(shape, s, *branch, enr->f_at_node[sup[s]]);
  }
}

}  // namespace

ElementMatrix element_stiffness(const Basis& basis, const EnrichedModel* enr,
                                const DofMap& dofmap, const Material& material,
                                int element, const QuadratureConfig& quad) {
  const Eigen::Matrix3d C = material.elasticity();
  ElementMatrix out;
  out.dofs = element_dofs(basis, dofmap, enr ? &enr->enrichment : nullptr, element);
  const int nd = out.dofs.count();
  out.K = Eigen::MatrixXd::Zero(nd, nd);
  Eigen::MatrixXd B(3, nd);

  const bool tip = has_tip_dofs(out.dofs);
  const int parent_degree =
      basis.kind() == Basis::Kind::t3 ? quad.t3_degree : quad.dfem_degree;
  const Vec2 tip_point = enr ? enr->crack.tip() : Vec2{};

  for (const Cell& cell : integration_cells(basis, enr, element)) {
    const TriRule* rule = &tri_rule(tip ? quad.tip_degree : parent_degree);
    TriRule duffy;
    if (tip && quad.almost_polar) {
      // use the collapsed rule on subcells having the tip as a vertex
      for (int i = 0; i < 3; ++i)
        if (distance(cell.v[i], tip_point) <
            1e-10 * (distance(cell.v[0], cell.v[1]) + distance(cell.v[1], cell.v[2]))) {
          duffy = duffy_rule(i, quad.almost_polar_points);
          rule = &duffy;
          break;
        }
    }
    for (std::size_t q = 0; q < rule->points.size(); ++q) {
      const auto& bc = rule->points[q];
      const Vec2 p = cell.v[0] * bc[0] + cell.v[1] * bc[1] + cell.v[2] * bc[2];
      const double w = rule->weights[q] * cell.area;
      const ShapeEval shape = basis.eval(element, p);
      fill_b_matrix(basis, enr, out.dofs, element, p, cell.h_sign, shape, B);
      out.K.noalias() += w * B.transpose() * C * B;
    }
  }
  if (!out.K.allFinite())
    throw std::runtime_error("element_stiffness: non-finite entries");
  return out;
}

System assemble(const Basis& basis, const EnrichedModel* enr,
                const Material& material, const LoadCase& load,
                const QuadratureConfig& quad) {
  material.validate();
  const Mesh& mesh = basis.mesh();
  System sys;
  sys.dofmap = enr ? DofMap::with_enrichment(mesh.node_count(), enr->enrichment)
                   : DofMap::standard(mesh.node_count());
  TripletList triplets(sys.dofmap.total());
  sys.f = Eigen::VectorXd::Zero(sys.dofmap.total());

  for (int e = 0; e < mesh.triangle_count(); ++e) {
    const ElementMatrix em =
        element_stiffness(basis, enr, sys.dofmap, material, e, quad);
    const int nd = em.dofs.count();
    for (int i = 0; i < nd; ++i)
      for (int j = 0; j < nd; ++j)
        triplets.add(em.dofs.global[i], em.dofs.global[j], em.K(i, j));

    if (load.body_force) {
      const auto& sup = basis.support(e);
      for (const Cell& cell : integration_cells(basis, enr, e)) {
        const TriRule& rule = tri_rule(
            basis.kind() == Basis::Kind::t3 ? 2 : quad.dfem_degree);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
          const auto& bc = rule.points[q];
          const Vec2 p = cell.v[0] * bc[0] + cell.v[1] * bc[1] + cell.v[2] * bc[2];
          const double w = rule.weights[q] * cell.area;
          const Vec2 b = load.body_force(p);
          const ShapeEval shape = basis.eval(e, p);
          for (std::size_t s = 0; s < sup.size(); ++s) {
            sys.f[sys.dofmap.u(sup[s], 0)] += w * shape.value[s] * b.x;
            sys.f[sys.dofmap.u(sup[s], 1)] += w * shape.value[s] * b.y;
          }
        }
      }
    }
  }

  // boundary tractions, including shifted enriched components
  const LineRule& erule = line_rule(quad.edge_degree);
  for (const auto& [edge_index, traction] : load.tractions) {
    const BoundaryEdge& edge = mesh.boundary_edges.at(edge_index);
    const Vec2 pa = mesh.nodes[edge.a], pb = mesh.nodes[edge.b];
    const double len = distance(pa, pb);
    const auto& sup = basis.support(edge.element);
    for (std::size_t q = 0; q < erule.points.size(); ++q) {
      const Vec2 p = pa + (pb - pa) * erule.points[q];
      const double w = erule.weights[q] * len;
      const Vec2 t = traction(p);
      const ShapeEval shape = basis.eval(edge.element, p);
      const int hp = enr ? heaviside(enr->crack, p) : 1;
      std::optional<BranchEval> branch;
      for (std::size_t s = 0; s < sup.size(); ++s) {
        const double n = shape.value[s];
        sys.f[sys.dofmap.u(sup[s], 0)] += w * n * t.x;
        sys.f[sys.dofmap.u(sup[s], 1)] += w * n * t.y;
        if (!enr) continue;
        if (sys.dofmap.has_a(sup[s])) {
          const double shifted = n * (hp - enr->h_at_node[sup[s]]);
          sys.f[sys.dofmap.a(sup[s], 0)] += w * shifted * t.x;
          sys.f[sys.dofmap.a(sup[s], 1)] += w * shifted * t.y;
        }
        if (sys.dofmap.has_b(sup[s])) {
          if (!branch) branch = branch_functions(enr->frame, p);
          for (int a = 0; a < 4; ++a) {
            const double shifted = n * (branch->f[a] - enr->f_at_node[sup[s]][a]);
            sys.f[sys.dofmap.b(sup[s], a, 0)] += w * shifted * t.x;
            sys.f[sys.dofmap.b(sup[s], a, 1)] += w * shifted * t.y;
          }
        }
      }
    }
  }

  for (const auto& pl : load.point_loads)
    sys.f[sys.dofmap.u(pl.node, pl.comp)] += pl.value;

  sys.K = triplets.compress();
  return sys;
}

void apply_dirichlet(System& system,
                     const std::vector<LoadCase::Dirichlet>& entries) {
  std::vector<std::pair<int, double>> fixed;
  for (const auto& d : entries)
    fixed.emplace_back(system.dofmap.u(d.node, d.comp), d.value);
  std::sort(fixed.begin(), fixed.end());
  for (std::size_t i = 1; i < fixed.size(); ++i)
    if (fixed[i].first == fixed[i - 1].first &&
        fixed[i].second != fixed[i - 1].second)
      throw std::invalid_argument("apply_dirichlet: conflicting duplicate entry");
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
  for (const auto& [dof, value] : fixed)
    system.K.eliminate_dof(dof, value, system.f);
}

FieldEval evaluate_solution(const Basis& basis, const EnrichedModel* enr,
                            const DofMap& dofmap, const Eigen::VectorXd& d,
                            int element, Vec2 p, int heaviside_hint) {
  const ShapeEval shape = basis.eval(element, p);
  const auto& sup = basis.support(element);
  FieldEval out;
  out.u = {0.0, 0.0};
  out.grad.setZero();
  std::optional<BranchEval> branch;
  int hp = heaviside_hint;
  for (std::size_t s = 0; s < sup.size(); ++s) {
    const int n = sup[s];
    const double N = shape.value[s];
    const double gx = shape.grad_x[s], gy = shape.grad_y[s];
    const Vec2 un{d[dofmap.u(n, 0)], d[dofmap.u(n, 1)]};
    out.u += un * N;
    out.grad(0, 0) += un.x * gx;
    out.grad(0, 1) += un.x * gy;
    out.grad(1, 0) += un.y * gx;
    out.grad(1, 1) += un.y * gy;
    if (!enr) continue;
    if (dofmap.has_a(n)) {
      if (hp == 0) hp = heaviside(enr->crack, p);
      const double shifted = N * (hp - enr->h_at_node[n]);
      const Vec2 an{d[dofmap.a(n, 0)], d[dofmap.a(n, 1)]};
      out.u += an * shifted;
      const double sgx = gx * (hp - enr->h_at_node[n]);
      const double sgy = gy * (hp - enr->h_at_node[n]);
      out.grad(0, 0) += an.x * sgx;
      out.grad(0, 1) += an.x * sgy;
      out.grad(1, 0) += an.y * sgx;
      out.grad(1, 1) += an.y * sgy;
    }
    if (dofmap.has_b(n)) {
      if (!branch) branch = branch_functions(enr->frame, p);
      for (int a = 0; a < 4; ++a) {
        const double shifted = branch->f[a] - enr->f_at_node[n][a];
        const Vec2 bn{d[dofmap.b(n, a, 0)], d[dofmap.b(n, a, 1)]};
        out.u += bn * (N * shifted);
        const double sgx = gx * shifted + N * branch->grad[a].x;
        const double sgy = gy * shifted + N * branch->grad[a].y;
        out.grad(0, 0) += bn.x * sgx;
        out.grad(0, 1) += bn.x * sgy;
        out.grad(1, 0) += bn.y * sgx;
        out.grad(1, 1) += bn.y * sgy;
      }
    }
  }
  return out;
}

Eigen::Vector3d stress_at(const FieldEval& f, const Material& material) {
  Eigen::Vector3d strain{f.grad(0, 0), f.grad(1, 1), f.grad(0, 1) + f.grad(1, 0)};
  return material.elasticity() * strain;
}

}  // namespace dfem
