#include "dfemlab/benchmarks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "dfemlab/mesh_gen.hpp"

namespace dfem {

Method method_from_string(const std::string& s) {
  if (s == "fem") return Method::fem;
  if (s == "dfem") return Method::dfem;
  if (s == "xfem") return Method::xfem;
  if (s == "xdfem") return Method::xdfem;
  throw std::invalid_argument("unknown method: " + s);
}

std::string to_string(Method m) {
  switch (m) {
    case Method::fem: return "fem";
    case Method::dfem: return "dfem";
    case Method::xfem: return "xfem";
    case Method::xdfem: return "xdfem";
  }
  return "?";
}

std::string case_csv_header(bool with_wall) {
  std::string h = "case,method,enrichment,dofs,h,R_d,R_e,K_I,K_II,cg_iters";
  if (with_wall) h += ",wall_ms";
  return h;
}

std::string to_csv(const CaseRow& row, bool with_wall) {
  char buf[320];
  std::snprintf(buf, sizeof buf, "%s,%s,%s,%d,%.12g,%.12g,%.12g,%.12g,%.12g,%d",
                row.case_name.c_str(), row.method.c_str(),
                row.enrichment.c_str(), row.dofs, row.h, row.r_d, row.r_e,
                row.k1, row.k2, row.cg_iters);
  std::string s = buf;
  if (with_wall) {
    std::snprintf(buf, sizeof buf, ",%.3f", row.wall_ms);
    s += buf;
  }
  return s;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<int> boundary_nodes(const Mesh& mesh) {
  std::vector<char> on(mesh.node_count(), 0);
  for (const auto& be : mesh.boundary_edges) on[be.a] = on[be.b] = 1;
  std::vector<int> out;
  for (int n = 0; n < mesh.node_count(); ++n)
    if (on[n]) out.push_back(n);
  return out;
}

void dirichlet_from_field(const Mesh& mesh, const std::vector<int>& nodes,
                          const AnalyticalField& field, LoadCase& load,
                          const CrackPath* crack) {
  for (int n : nodes) {
    Vec2 p = mesh.nodes[n];
    if (crack) {
      // nodes sitting exactly on the crack take the +1 (left) face value,
      // matching the Heaviside tie-break
      double dmin = 1e300;
      for (std::size_t i = 0; i + 1 < crack->vertices.size(); ++i)
        dmin = std::min(dmin, segment_distance(p, crack->vertices[i],
                                               crack->vertices[i + 1]));
      if (dmin < 1e-9 * mesh.diameter()) {
        const double ang = crack->tip_angle();
        p += Vec2{-std::sin(ang), std::cos(ang)} * (1e-9 * mesh.diameter());
      }
    }
    const Vec2 u = field.displacement(p);
    load.dirichlet.push_back({n, 0, u.x});
    load.dirichlet.push_back({n, 1, u.y});
  }
}

struct Solved {
  Basis basis;
  DofMap dofmap;
  Eigen::VectorXd d;
  int iterations;
};

Solved solve_case(const Mesh& mesh, const std::vector<NodePatch>& patches,
                  Method method, const EnrichedModel* enr,
                  const Material& material, const LoadCase& load,
                  const QuadratureConfig& quad, double tol) {
  DegenerationSet deg = DegenerationSet::none(mesh.node_count());
  if (method_is_dfem(method) && enr)
    deg = degeneration_from_enrichment(enr->enrichment, mesh, enr->crack);
  Basis basis(mesh, patches,
              method_is_dfem(method) ? deg : DegenerationSet::none(mesh.node_count()),
              method_is_dfem(method) ? Basis::Kind::dfem : Basis::Kind::t3);
  System sys = assemble(basis, enr, material, load, quad);
  apply_dirichlet(sys, load.dirichlet);
  PcgResult sol = pcg_solve(sys.K, sys.f, tol);
  return {std::move(basis), sys.dofmap, std::move(sol.x), sol.iterations};
}

}  // namespace

CaseRow run_bar1d(Method method, int elements) {
  const auto t0 = Clock::now();
  Bar1DProblem p;
  p.elements = elements;
  const Bar1DResult res = solve_bar_1d(
      p, method_is_dfem(method) ? Bar1DMethod::dfem : Bar1DMethod::fem);
  CaseRow row;
  row.case_name = "bar1d";
  row.method = to_string(method);
  row.enrichment = "none";
  row.dofs = elements + 1;
  row.h = p.length / elements;
  row.r_d = res.r_d;
  row.r_e = res.r_e;
  row.wall_ms = elapsed_ms(t0);
  return row;
}

CaseRow run_plate_hole(Method method, int n, double solver_tol) {
  const auto t0 = Clock::now();
  const double L = 5.0, a = 1.0;
  const Mesh mesh = quarter_plate_hole_mesh(n, L, a);
  const auto patches = build_patches(mesh);
  Material mat;  // E = 1000, nu = 0.3, plane stress
  const AnalyticalField exact = exact_plate_hole(a, 1.0, mat);

  LoadCase load;
  const double tol = 1e-9 * L;
  for (std::size_t i = 0; i < mesh.boundary_edges.size(); ++i) {
    const auto& be = mesh.boundary_edges[i];
    const Vec2 mid = (mesh.nodes[be.a] + mesh.nodes[be.b]) / 2.0;
    if (std::abs(mid.x - L) < tol || std::abs(mid.y - L) < tol) {
      const Vec2 normal = be.normal;
      load.tractions.emplace_back(static_cast<int>(i), [exact, normal](Vec2 p) {
        const Eigen::Vector3d s = exact.stress(p);
        return Vec2{s[0] * normal.x + s[2] * normal.y,
                    s[2] * normal.x + s[1] * normal.y};
      });
    }
  }
  for (int node = 0; node < mesh.node_count(); ++node) {
    if (std::abs(mesh.nodes[node].y) < tol) load.dirichlet.push_back({node, 1, 0.0});
    if (std::abs(mesh.nodes[node].x) < tol) load.dirichlet.push_back({node, 0, 0.0});
  }

  const Solved s =
      solve_case(mesh, patches, method, nullptr, mat, load, {}, solver_tol);
  NormReport rep = l2_and_energy_norms(s.basis, nullptr, mat, s.dofmap, s.d, exact);
  CaseRow row;
  row.case_name = "plate-hole";
  row.method = to_string(method);
  row.enrichment = "none";
  row.dofs = rep.dof_count;
  row.h = 1.0 / (n - 1);
  row.r_d = rep.r_d;
  row.r_e = rep.r_e;
  row.cg_iters = s.iterations;
  row.wall_ms = elapsed_ms(t0);
  return row;
}

CaseRow run_timoshenko(Method method, int nx, int ny, double solver_tol) {
  const auto t0 = Clock::now();
  const double L = 48.0, W = 12.0, P = 1000.0;
  const Mesh mesh = shifted_rect_mesh(nx, ny, L, W, 0.0, -W / 2.0);
  const auto patches = build_patches(mesh);
  Material mat;  // plane stress
  const AnalyticalField exact = exact_timoshenko(P, L, W, mat);

  LoadCase load;
  const double tol = 1e-9 * L;
  for (std::size_t i = 0; i < mesh.boundary_edges.size(); ++i) {
    const auto& be = mesh.boundary_edges[i];
    const Vec2 mid = (mesh.nodes[be.a] + mesh.nodes[be.b]) / 2.0;
    if (std::abs(mid.x - L) < tol) {
      load.tractions.emplace_back(static_cast<int>(i), [exact](Vec2 p) {
        const Eigen::Vector3d s = exact.stress(p);
        return Vec2{s[0], s[2]};  // outward normal is +x
      });
    }
  }
  std::vector<int> left;
  for (int node = 0; node < mesh.node_count(); ++node)
    if (std::abs(mesh.nodes[node].x) < tol) left.push_back(node);
  dirichlet_from_field(mesh, left, exact, load, nullptr);

  const Solved s =
      solve_case(mesh, patches, method, nullptr, mat, load, {}, solver_tol);
  NormReport rep = l2_and_energy_norms(s.basis, nullptr, mat, s.dofmap, s.d, exact);
  CaseRow row;
  row.case_name = "timoshenko";
  row.method = to_string(method);
  row.enrichment = "none";
  row.dofs = rep.dof_count;
  row.h = W / ny;
  row.r_d = rep.r_d;
  row.r_e = rep.r_e;
  row.cg_iters = s.iterations;
  row.wall_ms = elapsed_ms(t0);
  return row;
}

namespace {

// Demote tip enrichment for the Heaviside-only regime: tip-element nodes
// keep a-DOFs only when a cut element shares them.
void demote_tip_enrichment(EnrichedModel& enr, const Mesh& mesh) {
  std::vector<char> on_cut(mesh.node_count(), 0);
  for (int e = 0; e < mesh.triangle_count(); ++e)
    if (enr.enrichment.element_cut[e])
      for (int v : mesh.triangles[e]) on_cut[v] = 1;
  for (int n = 0; n < mesh.node_count(); ++n)
    if (enr.enrichment.kind[n] == EnrichKind::tip)
      enr.enrichment.kind[n] =
          on_cut[n] ? EnrichKind::heaviside : EnrichKind::none;
}

}  // namespace

CaseRow run_griffith(Method method, const GriffithOptions& options) {
  const auto t0 = Clock::now();
  const double size = 10.0, sigma = 1.0, a = 1.0;
  const double k1_exact = sigma * std::sqrt(M_PI * a);
  Material mat;
  mat.state = PlaneState::plane_strain;

  CrackPath crack;
  crack.vertices = {{-size, 0.0}, {0.0, 0.0}};
  const TipFrame frame = tip_frame(crack);
  const AnalyticalField exact = exact_westergaard(k1_exact, 0.0, frame, mat);

  CaseRow row;
  row.case_name = options.distortion > 0.0 ? "griffith-distorted" : "griffith";
  row.method = to_string(method);
  row.h = size / options.intervals;

  if (options.regime == GriffithRegime::explicit_slit) {
    const Mesh mesh = centered_slit_mesh(options.intervals, size);
    const auto patches = build_patches(mesh);
    LoadCase load;
    // outer square boundary only; slit faces stay traction-free
    std::vector<int> outer;
    for (int n : boundary_nodes(mesh)) {
      const Vec2 p = mesh.nodes[n];
      if (std::abs(std::abs(p.x) - size / 2) < 1e-9 ||
          std::abs(std::abs(p.y) - size / 2) < 1e-9)
        outer.push_back(n);
    }
    // duplicated face nodes take the side of their own elements
    const auto dup_side = [&](int n) {
      const NodePatch& pa = patches[n];
      double y = 0.0;
      for (int e : pa.elements) y += mesh.centroid(e).y;
      return y >= 0.0 ? 1.0 : -1.0;
    };
    for (int n : outer) {
      Vec2 p = mesh.nodes[n];
      if (std::abs(p.y) < 1e-12 && p.x < 0.0)
        p.y += dup_side(n) * 1e-9 * size;
      const Vec2 u = exact.displacement(p);
      load.dirichlet.push_back({n, 0, u.x});
      load.dirichlet.push_back({n, 1, u.y});
    }
    const Solved s = solve_case(mesh, patches, method, nullptr, mat, load, {},
                                options.solver_tol);
    const NormReport rep =
        l2_and_energy_norms(s.basis, nullptr, mat, s.dofmap, s.d, exact);
    row.enrichment = "explicit";
    row.dofs = rep.dof_count;
    row.r_d = rep.r_d;
    row.r_e = rep.r_e;
    row.cg_iters = s.iterations;
    row.wall_ms = elapsed_ms(t0);
    return row;
  }

  if (!method_is_enriched(method))
    throw std::invalid_argument("run_griffith: enriched regime needs xfem/xdfem");
  const Mesh mesh =
      centered_square_mesh(options.intervals, size, options.distortion, options.seed);
  const auto patches = build_patches(mesh);
  EnrichedModel enr = EnrichedModel::build(mesh, crack, options.scheme);
  if (options.regime == GriffithRegime::heaviside_only)
    demote_tip_enrichment(enr, mesh);

  LoadCase load;
  dirichlet_from_field(mesh, boundary_nodes(mesh), exact, load, &crack);
  QuadratureConfig quad;
  quad.almost_polar = options.almost_polar;
  const Solved s =
      solve_case(mesh, patches, method, &enr, mat, load, quad, options.solver_tol);
  const NormReport rep =
      l2_and_energy_norms(s.basis, &enr, mat, s.dofmap, s.d, exact);
  row.enrichment =
      options.regime == GriffithRegime::heaviside_only
          ? "heaviside"
          : (options.scheme.mode == EnrichmentScheme::Mode::fixed_area
                 ? "fixed"
                 : "topological");
  row.dofs = rep.dof_count;
  row.r_d = rep.r_d;
  row.r_e = rep.r_e;
  row.cg_iters = s.iterations;
  if (options.regime == GriffithRegime::full) {
    const double radius = default_sif_radius(mesh, enr.enrichment);
    const InteractionDomain dom = make_interaction_domain(mesh, crack, radius);
    const SifPair k =
        interaction_integral_sifs(s.basis, enr, mat, s.dofmap, s.d, dom);
    row.k1 = k.k1 / k1_exact;
    row.k2 = k.k2 / k1_exact;
  }
  row.wall_ms = elapsed_ms(t0);
  return row;
}

CaseRow run_inclined(Method method, double beta, int intervals,
                     double solver_tol) {
  const auto t0 = Clock::now();
  if (!method_is_enriched(method))
    throw std::invalid_argument("run_inclined: needs xfem/xdfem");
  const double size = 10.0, sigma = 1.0, a = 1000.0;
  Material mat;
  mat.state = PlaneState::plane_strain;
  const SifPair k_exact = exact_inclined_sifs(sigma, a, beta);
  const double norm = sigma * std::sqrt(M_PI * a);

  CrackPath crack;
  const Vec2 dir{std::cos(beta), std::sin(beta)};
  crack.vertices = {Vec2{0, 0} - dir * (1.5 * size), {0.0, 0.0}};
  const TipFrame frame = tip_frame(crack);
  const AnalyticalField exact =
      exact_westergaard(k_exact.k1, k_exact.k2, frame, mat);

  const Mesh mesh = centered_square_mesh(intervals, size);
  const auto patches = build_patches(mesh);
  const EnrichedModel enr =
      EnrichedModel::build(mesh, crack, EnrichmentScheme::topological());

  LoadCase load;
  dirichlet_from_field(mesh, boundary_nodes(mesh), exact, load, &crack);
  const Solved s =
      solve_case(mesh, patches, method, &enr, mat, load, {}, solver_tol);

  CaseRow row;
  row.case_name = "inclined";
  row.method = to_string(method);
  row.enrichment = "topological";
  row.dofs = s.dofmap.total();
  row.h = size / intervals;
  row.cg_iters = s.iterations;
  if (k_exact.k1 == 0.0 && k_exact.k2 == 0.0) {
    // beta = pi/2: the imposed field is identically zero
    row.k1 = 0.0;
    row.k2 = 0.0;
  } else {
    const double radius = default_sif_radius(mesh, enr.enrichment);
    const InteractionDomain dom = make_interaction_domain(mesh, crack, radius);
    const SifPair k =
        interaction_integral_sifs(s.basis, enr, mat, s.dofmap, s.d, dom);
    row.k1 = k.k1 / norm;
    row.k2 = k.k2 / norm;
  }
  const NormReport rep =
      l2_and_energy_norms(s.basis, &enr, mat, s.dofmap, s.d, exact);
  row.r_d = rep.r_d;
  row.r_e = rep.r_e;
  row.wall_ms = elapsed_ms(t0);
  return row;
}

ThreeHoleResult run_three_hole(const ThreeHoleOptions& options) {
  const auto t0 = Clock::now();
  // 20 x 8 three-point-bending specimen with a column of three holes;
  // supports near the lower corners, point load at the top center
  const double W = 20.0, H = 8.0, hole_x = 7.0, hole_r = 0.5;
  double d, a, increment;
  int table_steps;
  switch (options.case_id) {
    case 1: d = 5.0; a = 1.5; increment = 0.052; table_steps = 67; break;
    case 2: d = 6.0; a = 1.0; increment = 0.060; table_steps = 69; break;
    case 3: d = 6.0; a = 2.5; increment = 0.048; table_steps = 97; break;
    default: throw std::invalid_argument("run_three_hole: case 1..3");
  }
  const int nx = options.paper_scale ? 244 : 61;
  const int ny = options.paper_scale ? 100 : 25;
  if (!options.paper_scale) increment *= 4.0;  // quarter-density mesh
  int steps = options.steps >= 0 ? options.steps
                                 : (options.paper_scale ? table_steps : 20);

  Mesh mesh = carve_holes(
      shifted_rect_mesh(nx, ny, W, H, 0.0, 0.0),
      {{{hole_x, 2.5}, hole_r}, {{hole_x, 4.5}, hole_r}, {{hole_x, 6.5}, hole_r}});
  const auto patches = build_patches(mesh);

  Material mat;
  mat.nu = 0.37;  // plexiglass
  mat.state = PlaneState::plane_strain;

  auto nearest = [&](Vec2 p) {
    int best = 0;
    for (int n = 1; n < mesh.node_count(); ++n)
      if (distance(mesh.nodes[n], p) < distance(mesh.nodes[best], p)) best = n;
    return best;
  };
  LoadCase load;
  const int s1 = nearest({1.0, 0.0}), s2 = nearest({W - 1.0, 0.0});
  const int lp = nearest({W / 2.0, H});
  load.dirichlet.push_back({s1, 0, 0.0});
  load.dirichlet.push_back({s1, 1, 0.0});
  load.dirichlet.push_back({s2, 1, 0.0});
  load.point_loads.push_back({lp, 1, -1.0});

  CrackPath crack;
  crack.vertices = {{d, -0.5}, {d, a}};

  PropagationConfig config;
  config.increment = increment;
  config.steps = steps;
  config.scheme = EnrichmentScheme::topological();
  config.kind = method_is_dfem(options.method) ? Basis::Kind::dfem : Basis::Kind::t3;

  ThreeHoleResult result;
  result.outcome = propagate(mesh, patches, mat, load, crack, config);
  result.crack_x0 = d;
  result.hole_x = hole_x;
  result.row.case_name = "three-hole-" + std::to_string(options.case_id);
  result.row.method = to_string(options.method);
  result.row.enrichment = "topological";
  result.row.h = W / nx;
  result.row.dofs = 2 * mesh.node_count();
  if (!result.outcome.steps.empty()) {
    result.row.k1 = result.outcome.steps.back().sifs.k1;
    result.row.k2 = result.outcome.steps.back().sifs.k2;
    result.row.cg_iters = result.outcome.steps.back().cg_iterations;
  }
  result.row.wall_ms = elapsed_ms(t0);
  return result;
}

}  // namespace dfem
