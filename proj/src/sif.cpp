#include "dfemlab/sif.hpp"

#include <cmath>
#include <stdexcept>

namespace dfem {

double default_sif_radius(const Mesh& mesh, const NodeEnrichment& enr,
                          double factor) {
  if (enr.tip_element < 0)
    throw std::runtime_error("default_sif_radius: no tip element");
  return factor * mesh.triangle_diameter(enr.tip_element);
}

InteractionDomain make_interaction_domain(const Mesh& mesh,
                                          const CrackPath& crack,
                                          double radius) {
  const Vec2 tip = crack.tip();
  InteractionDomain dom;
  dom.radius = radius;

  for (const BoundaryEdge& be : mesh.boundary_edges)
    if (segment_distance(tip, mesh.nodes[be.a], mesh.nodes[be.b]) < radius)
      throw std::runtime_error(
          "interaction domain touches the outer boundary");
  // earlier segments of the crack itself (the two nearest the tip are its
  // own approach and are fine)
  const auto& v = crack.vertices;
  for (std::size_t i = 0; i + 3 < v.size(); ++i)
    if (segment_distance(tip, v[i], v[i + 1]) < radius)
      throw std::runtime_error("interaction domain touches the crack path");

  dom.q.assign(mesh.node_count(), 0.0);
  for (int n = 0; n < mesh.node_count(); ++n)
    if (distance(mesh.nodes[n], tip) <= radius) dom.q[n] = 1.0;
  for (int e = 0; e < mesh.triangle_count(); ++e) {
    const auto& t = mesh.triangles[e];
    const double qs = dom.q[t[0]] + dom.q[t[1]] + dom.q[t[2]];
    if (qs > 0.0 && qs < 3.0) dom.elements.push_back(e);
  }
  if (dom.elements.empty())
    throw std::runtime_error("interaction domain is empty");
  return dom;
}

SifPair interaction_integral_sifs(const Basis& basis, const EnrichedModel& enr,
                                  const Material& material,
                                  const DofMap& dofmap,
                                  const Eigen::VectorXd& d,
                                  const InteractionDomain& domain) {
  const Mesh& mesh = basis.mesh();
  const TipFrame& frame = enr.frame;
  Eigen::Matrix2d R;
  R << frame.c, -frame.s, frame.s, frame.c;
  const Eigen::Matrix2d Rt = R.transpose();

  // unit-K auxiliary fields expressed in the tip frame
  TipFrame local_frame;  // identity placed at the origin
  const AnalyticalField aux1 = exact_westergaard(1.0, 0.0, local_frame, material);
  const AnalyticalField aux2 = exact_westergaard(0.0, 1.0, local_frame, material);

  const TriRule& rule = tri_rule(8);
  double I1 = 0.0, I2 = 0.0;
  for (int e : domain.elements) {
    const auto& t = mesh.triangles[e];
    // plateau weight interpolated with the hat functions of the element
    const std::array<double, 3> qn{domain.q[t[0]], domain.q[t[1]],
                                   domain.q[t[2]]};
    struct Cell {
      std::array<Vec2, 3> v;
      double area;
      int sign;
    };
    std::vector<Cell> cells;
    if (!enr.subcells[e].empty()) {
      for (const auto& tri : enr.subcells[e])
        cells.push_back({tri, 0.5 * std::abs(signed_area2(tri[0], tri[1], tri[2])),
                         heaviside(enr.crack, (tri[0] + tri[1] + tri[2]) / 3.0)});
    } else {
      cells.push_back({{mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]},
                       mesh.triangle_area(e), 0});
    }
    for (const Cell& cell : cells) {
      for (std::size_t qi = 0; qi < rule.points.size(); ++qi) {
        const auto& bc = rule.points[qi];
        const Vec2 p = cell.v[0] * bc[0] + cell.v[1] * bc[1] + cell.v[2] * bc[2];
        const double w = rule.weights[qi] * cell.area;

        const AreaCoords ac = area_coordinates(mesh, e, p);
        Vec2 grad_q{0.0, 0.0};
        for (int i = 0; i < 3; ++i) {
          grad_q.x += qn[i] * ac.b[i] / (2.0 * ac.area);
          grad_q.y += qn[i] * ac.c[i] / (2.0 * ac.area);
        }
        const Vec2 gq_local{frame.c * grad_q.x + frame.s * grad_q.y,
                            -frame.s * grad_q.x + frame.c * grad_q.y};

        const FieldEval num =
            evaluate_solution(basis, &enr, dofmap, d, e, p, cell.sign);
        const Eigen::Vector3d sg = stress_at(num, material);
        Eigen::Matrix2d sig_g;
        sig_g << sg[0], sg[2], sg[2], sg[1];
        const Eigen::Matrix2d sig = Rt * sig_g * R;       // tip frame
        const Eigen::Matrix2d gradu = Rt * num.grad * R;  // tip frame

        const Vec2 pl = frame.to_local(p);
        for (int mode = 0; mode < 2; ++mode) {
          const AnalyticalField& aux = mode == 0 ? aux1 : aux2;
          const Eigen::Vector3d sa = aux.stress(pl);
          Eigen::Matrix2d sig_aux;
          sig_aux << sa[0], sa[2], sa[2], sa[1];
          const Eigen::Matrix2d ga = aux.displacement_gradient(pl);
          const Eigen::Matrix2d eps_aux = 0.5 * (ga + ga.transpose());
          const double W = sig(0, 0) * eps_aux(0, 0) + sig(1, 1) * eps_aux(1, 1) +
                           2.0 * sig(0, 1) * eps_aux(0, 1);
          double P0 = -W, P1 = 0.0;
          for (int i = 0; i < 2; ++i) {
            P0 += sig(i, 0) * ga(i, 0) + sig_aux(i, 0) * gradu(i, 0);
            P1 += sig(i, 1) * ga(i, 0) + sig_aux(i, 1) * gradu(i, 0);
          }
          const double contrib = w * (P0 * gq_local.x + P1 * gq_local.y);
          if (mode == 0)
            I1 += contrib;
          else
            I2 += contrib;
        }
      }
    }
  }
  const double estar = material.e_star();
  return {0.5 * estar * I1, 0.5 * estar * I2};
}

double hoop_stress_angle(SifPair sifs) {
  const double k1 = sifs.k1, k2 = sifs.k2;
  if (k1 == 0.0 && k2 == 0.0)
    throw std::invalid_argument("hoop_stress_angle: both factors zero");
  if (k2 == 0.0) return 0.0;
  const double rho = k1 / k2;
  const double sgn = k2 > 0.0 ? 1.0 : -1.0;
  return 2.0 * std::atan((rho - sgn * std::sqrt(rho * rho + 8.0)) / 4.0);
}

PropagationOutcome propagate(const Mesh& mesh,
                             const std::vector<NodePatch>& patches,
                             const Material& material, const LoadCase& load,
                             CrackPath crack, const PropagationConfig& config) {
  if (config.increment <= 0.0)
    throw std::invalid_argument("propagate: increment > 0 required");
  PropagationOutcome out;
  out.status = "completed";

  for (int step = 0; step < config.steps; ++step) {
    if (mesh.find_element(crack.tip()) < 0) {
      out.status = "tip-left-domain";
      break;
    }
    EnrichedModel enr = EnrichedModel::build(mesh, crack, config.scheme);
    if (enr.enrichment.tip_element < 0) {
      out.status = "tip-left-domain";
      break;
    }
    DegenerationSet deg =
        config.kind == Basis::Kind::dfem
            ? degeneration_from_enrichment(enr.enrichment, mesh, crack)
            : DegenerationSet::none(mesh.node_count());
    Basis basis(mesh, patches, deg, config.kind);
    System sys = assemble(basis, &enr, material, load, config.quad);
    apply_dirichlet(sys, load.dirichlet);
    const PcgResult sol =
        pcg_solve(sys.K, sys.f, config.solver_tol, config.solver_max_iter);

    SifPair sifs;
    bool extracted = false;
    // shrink the domain when the tip crowds a boundary (e.g. a hole rim)
    for (double factor = config.sif_radius_factor; factor >= 1.2;
         factor -= 0.5) {
      try {
        const double radius = default_sif_radius(mesh, enr.enrichment, factor);
        const InteractionDomain dom =
            make_interaction_domain(mesh, crack, radius);
        sifs = interaction_integral_sifs(basis, enr, material, sys.dofmap,
                                         sol.x, dom);
        extracted = true;
        break;
      } catch (const std::runtime_error&) {
        continue;
      }
    }
    if (!extracted) {
      out.status = "sif-failure";
      break;
    }

    double theta;
    try {
      theta = hoop_stress_angle(sifs);
    } catch (const std::invalid_argument&) {
      out.status = "sif-failure";
      break;
    }
    out.steps.push_back({step, crack.tip(), sifs, theta, sol.iterations});

    const double angle = crack.tip_angle() + theta;
    crack.vertices.push_back(crack.tip() +
                             Vec2{std::cos(angle), std::sin(angle)} *
                                 config.increment);
  }
  out.crack = crack;
  return out;
}

}  // namespace dfem
