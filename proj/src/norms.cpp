#include "dfemlab/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace dfem {

NormReport l2_and_energy_norms(const Basis& basis, const EnrichedModel* enr,
                               const Material& material, const DofMap& dofmap,
                               const Eigen::VectorXd& d,
                               const AnalyticalField& exact, int degree) {
  const Mesh& mesh = basis.mesh();
  const Eigen::Matrix3d C = material.elasticity();
  const Eigen::Matrix3d Cinv = C.inverse();
  const TriRule& rule = tri_rule(degree);

  double num_d = 0.0, den_d = 0.0, num_e = 0.0, den_e = 0.0;
  for (int e = 0; e < mesh.triangle_count(); ++e) {
    struct Cell {
      std::array<Vec2, 3> v;
      double area;
      int sign;
    };
    std::vector<Cell> cells;
    if (enr && !enr->subcells[e].empty()) {
      for (const auto& t : enr->subcells[e])
        cells.push_back({t, 0.5 * std::abs(signed_area2(t[0], t[1], t[2])),
                         heaviside(enr->crack, (t[0] + t[1] + t[2]) / 3.0)});
    } else {
      const auto& t = mesh.triangles[e];
      cells.push_back({{mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]},
                       mesh.triangle_area(e), 0});
    }
    for (const Cell& cell : cells) {
      for (std::size_t q = 0; q < rule.points.size(); ++q) {
        const auto& bc = rule.points[q];
        const Vec2 p = cell.v[0] * bc[0] + cell.v[1] * bc[1] + cell.v[2] * bc[2];
        const double w = rule.weights[q] * cell.area;
        const FieldEval num =
            evaluate_solution(basis, enr, dofmap, d, e, p, cell.sign);
        const Vec2 ue = exact.displacement(p);
        const Eigen::Vector3d se = exact.stress(p);
        const Eigen::Vector3d ee = Cinv * se;
        const Eigen::Vector3d sh = stress_at(num, material);
        const Eigen::Vector3d eh{num.grad(0, 0), num.grad(1, 1),
                                 num.grad(0, 1) + num.grad(1, 0)};
        const Vec2 du = num.u - ue;
        num_d += w * du.squared_norm();
        den_d += w * ue.squared_norm();
        num_e += w * (sh - se).dot(eh - ee);
        den_e += w * se.dot(ee);
      }
    }
  }
  if (den_d <= 0.0 || den_e <= 0.0)
    throw std::runtime_error("l2_and_energy_norms: zero exact norm");
  NormReport rep;
  rep.r_d = std::sqrt(num_d / den_d);
  rep.r_e = std::sqrt(std::abs(num_e) / den_e);
  rep.dof_count = dofmap.total();
  return rep;
}

double convergence_rate(const std::vector<std::pair<double, double>>& series) {
  if (series.size() < 2)
    throw std::invalid_argument("convergence_rate: need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [h, err] : series) {
    if (h <= 0.0 || err <= 0.0)
      throw std::invalid_argument("convergence_rate: non-positive data");
    const double x = std::log(h), y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(series.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

NodalStressTable recover_nodal_stress(const Basis& basis,
                                      const EnrichedModel* enr,
                                      const std::vector<NodePatch>& patches,
                                      const DofMap& dofmap,
                                      const Eigen::VectorXd& d,
                                      const Material& material,
                                      StressRecovery method) {
  const Mesh& mesh = basis.mesh();
  NodalStressTable out;
  out.stress.assign(mesh.node_count(), Eigen::Vector3d::Zero());
  out.fallback.assign(mesh.node_count(), 0);

  // centroid stresses for the averaged variant (and the fallback)
  std::vector<Eigen::Vector3d> centroid_stress(mesh.triangle_count());
  for (int e = 0; e < mesh.triangle_count(); ++e) {
    const int sign =
        enr ? heaviside(enr->crack, mesh.centroid(e)) : 0;
    centroid_stress[e] = stress_at(
        evaluate_solution(basis, enr, dofmap, d, e, mesh.centroid(e), sign),
        material);
  }
  auto averaged = [&](int n) {
    Eigen::Vector3d s = Eigen::Vector3d::Zero();
    const NodePatch& p = patches[n];
    for (std::size_t k = 0; k < p.elements.size(); ++k)
      s += p.weights[k] * centroid_stress[p.elements[k]];
    return s;
  };

  for (int n = 0; n < mesh.node_count(); ++n) {
    if (method == StressRecovery::averaged) {
      out.stress[n] = averaged(n);
      continue;
    }
    if (basis.kind() == Basis::Kind::dfem && !basis.degeneration().degenerated(n)) {
      const int host = patches[n].elements.front();
      const int sign = enr ? enr->h_at_node[n] : 0;
      out.stress[n] = stress_at(
          evaluate_solution(basis, enr, dofmap, d, host, mesh.nodes[n], sign),
          material);
    } else {
      out.stress[n] = averaged(n);
      out.fallback[n] = 1;
    }
  }
  return out;
}

}  // namespace dfem
