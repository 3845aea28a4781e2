#include "dfemlab/runner.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "dfemlab/mesh_gen.hpp"
#include "dfemlab/vtk.hpp"

namespace dfem {

namespace {

using nlohmann::json;

Mesh build_mesh(const RunConfig& config) {
  if (!config.mesh_file.empty()) return load_mesh(config.mesh_file);
  if (!config.generator) throw std::invalid_argument("config: no mesh source");
  const auto& g = *config.generator;
  if (g.type == "rect")
    return shifted_rect_mesh(g.nx, g.ny, g.width, g.height, g.x0, g.y0);
  if (g.type == "centered-square")
    return centered_square_mesh(g.intervals, g.size, g.distortion, g.seed);
  if (g.type == "plate-hole")
    return quarter_plate_hole_mesh(g.n, g.length, g.radius, g.grading);
  if (g.type == "slit") return centered_slit_mesh(g.intervals, g.size);
  if (g.type == "three-hole")
    return carve_holes(shifted_rect_mesh(g.nx, g.ny, 20.0, 8.0, 0.0, 0.0),
                       {{{7.0, 2.5}, 0.5}, {{7.0, 4.5}, 0.5}, {{7.0, 6.5}, 0.5}});
  throw std::invalid_argument("config: unknown generator type " + g.type);
}

AnalyticalField linear_patch_field() {
  AnalyticalField f;
  f.displacement = [](Vec2 p) {
    return Vec2{0.1 * p.x + 0.2 * p.y + 0.03, 0.25 * p.x - 0.15 * p.y - 0.01};
  };
  f.stress = [](Vec2 p) {
    (void)p;
    // filled in by the caller: depends on the material
    return Eigen::Vector3d::Zero().eval();
  };
  return f;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  const json j = json::parse(json_text);
  RunConfig c;
  c.version = j.value("version", 1);
  if (c.version != 1) throw std::invalid_argument("config: unsupported version");
  if (j.contains("mesh")) {
    const auto& m = j.at("mesh");
    if (m.contains("file")) c.mesh_file = m.at("file").get<std::string>();
    if (m.contains("generator")) {
      const auto& g = m.at("generator");
      RunConfig::Generator gen;
      gen.type = g.value("type", "rect");
      gen.nx = g.value("nx", gen.nx);
      gen.ny = g.value("ny", gen.ny);
      gen.n = g.value("n", gen.n);
      gen.intervals = g.value("intervals", gen.intervals);
      gen.width = g.value("width", gen.width);
      gen.height = g.value("height", gen.height);
      gen.size = g.value("size", gen.size);
      gen.length = g.value("length", gen.length);
      gen.radius = g.value("radius", gen.radius);
      gen.grading = g.value("grading", gen.grading);
      gen.x0 = g.value("x0", gen.x0);
      gen.y0 = g.value("y0", gen.y0);
      gen.distortion = g.value("distortion", gen.distortion);
      gen.seed = g.value("seed", static_cast<std::uint64_t>(0));
      c.generator = gen;
    }
  }
  c.method = method_from_string(j.value("method", "dfem"));
  if (j.contains("material")) {
    const auto& m = j.at("material");
    c.material.E = m.value("E", c.material.E);
    c.material.nu = m.value("nu", c.material.nu);
    const std::string state = m.value("state", "plane_stress");
    if (state == "plane_strain")
      c.material.state = PlaneState::plane_strain;
    else if (state == "plane_stress")
      c.material.state = PlaneState::plane_stress;
    else
      throw std::invalid_argument("config: unknown material state " + state);
    c.material.legacy_plane_stress_kappa =
        m.value("legacy_plane_stress_kappa", false);
  }
  if (j.contains("load")) {
    const auto& l = j.at("load");
    c.preset = l.value("preset", "");
    c.sigma = l.value("sigma", 1.0);
    c.crack_length = l.value("a", 1.0);
    c.beta = l.value("beta", 0.0);
  }
  if (j.contains("crack"))
    for (const auto& v : j.at("crack"))
      c.crack.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  if (j.contains("enrichment")) {
    const auto& e = j.at("enrichment");
    const std::string scheme = e.value("scheme", "topological");
    if (scheme == "topological")
      c.scheme = EnrichmentScheme::topological();
    else if (scheme == "fixed")
      c.scheme = EnrichmentScheme::fixed_area(e.at("radius").get<double>());
    else
      throw std::invalid_argument("config: unknown enrichment scheme " + scheme);
  }
  if (j.contains("solver")) {
    c.solver_tol = j.at("solver").value("tol", 1e-10);
    c.solver_max_iter = j.at("solver").value("max_iter", -1);
  }
  if (j.contains("quadrature")) {
    const auto& q = j.at("quadrature");
    c.quad.t3_degree = q.value("t3_degree", c.quad.t3_degree);
    c.quad.dfem_degree = q.value("dfem_degree", c.quad.dfem_degree);
    c.quad.tip_degree = q.value("tip_degree", c.quad.tip_degree);
    c.quad.edge_degree = q.value("edge_degree", c.quad.edge_degree);
    c.quad.almost_polar = q.value("almost_polar", false);
  }
  if (j.contains("propagate")) {
    RunConfig::Propagation p;
    p.increment = j.at("propagate").value("increment", 0.1);
    p.steps = j.at("propagate").value("steps", 10);
    c.propagation = p;
  }
  c.output_dir = j.value("output_dir", ".");
  c.seed = j.value("seed", static_cast<std::uint64_t>(0));

  if (method_is_enriched(c.method) && c.crack.empty() &&
      c.preset != "three-hole")
    throw std::invalid_argument("config: xfem/xdfem require a crack polyline");
  if (c.scheme.mode == EnrichmentScheme::Mode::fixed_area && c.scheme.radius <= 0)
    throw std::invalid_argument("config: fixed enrichment radius must be > 0");
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

namespace {

struct RunArtifacts {
  CaseRow row;
  std::vector<Vec2> displacement;
  std::vector<Eigen::Vector3d> stress;
  std::vector<PropagationStep> history;
};

std::vector<int> all_boundary_nodes(const Mesh& mesh) {
  std::vector<char> on(mesh.node_count(), 0);
  for (const auto& be : mesh.boundary_edges) on[be.a] = on[be.b] = 1;
  std::vector<int> out;
  for (int n = 0; n < mesh.node_count(); ++n)
    if (on[n]) out.push_back(n);
  return out;
}

RunArtifacts execute(const RunConfig& config) {
  RunArtifacts art;
  const Mesh mesh = build_mesh(config);
  const auto patches = build_patches(mesh);
  const Material& mat = config.material;
  mat.validate();

  CrackPath crack;
  const bool has_crack = !config.crack.empty();
  if (has_crack) {
    crack.vertices = config.crack;
    crack.validate();
  }

  if (config.preset == "three-hole" || config.propagation) {
    if (!config.propagation)
      throw std::invalid_argument("run: propagation preset needs propagate{}");
    LoadCase load;
    if (config.preset == "three-hole") {
      auto nearest = [&](Vec2 p) {
        int best = 0;
        for (int n = 1; n < mesh.node_count(); ++n)
          if (distance(mesh.nodes[n], p) < distance(mesh.nodes[best], p))
            best = n;
        return best;
      };
      const int s1 = nearest({1.0, 0.0}), s2 = nearest({19.0, 0.0});
      const int lp = nearest({10.0, 8.0});
      load.dirichlet.push_back({s1, 0, 0.0});
      load.dirichlet.push_back({s1, 1, 0.0});
      load.dirichlet.push_back({s2, 1, 0.0});
      load.point_loads.push_back({lp, 1, -1.0});
    } else {
      throw std::invalid_argument("run: propagation supports the three-hole preset");
    }
    PropagationConfig pc;
    pc.increment = config.propagation->increment;
    pc.steps = config.propagation->steps;
    pc.scheme = config.scheme;
    pc.kind = method_is_dfem(config.method) ? Basis::Kind::dfem : Basis::Kind::t3;
    pc.quad = config.quad;
    pc.solver_tol = config.solver_tol;
    pc.solver_max_iter = config.solver_max_iter;
    const PropagationOutcome outcome =
        propagate(mesh, patches, mat, load, crack, pc);
    art.history = outcome.steps;
    art.row.case_name = config.preset;
    art.row.method = to_string(config.method);
    art.row.enrichment =
        config.scheme.mode == EnrichmentScheme::Mode::fixed_area ? "fixed"
                                                                 : "topological";
    art.row.dofs = 2 * mesh.node_count();
    art.row.h = mesh.diameter() / std::sqrt(double(mesh.triangle_count()));
    if (!outcome.steps.empty()) {
      art.row.k1 = outcome.steps.back().sifs.k1;
      art.row.k2 = outcome.steps.back().sifs.k2;
      art.row.cg_iters = outcome.steps.back().cg_iterations;
    }
    if (outcome.status != "completed")
      throw std::runtime_error("propagation stopped: " + outcome.status);
    // fields of the final configuration
    EnrichedModel enr = EnrichedModel::build(mesh, outcome.crack, config.scheme);
    DegenerationSet deg =
        pc.kind == Basis::Kind::dfem
            ? degeneration_from_enrichment(enr.enrichment, mesh, outcome.crack)
            : DegenerationSet::none(mesh.node_count());
    Basis basis(mesh, patches, deg, pc.kind);
    System sys = assemble(basis, &enr, mat, load, config.quad);
    apply_dirichlet(sys, load.dirichlet);
    const PcgResult sol =
        pcg_solve(sys.K, sys.f, config.solver_tol, config.solver_max_iter);
    const auto table = recover_nodal_stress(
        basis, &enr, patches, sys.dofmap, sol.x, mat,
        method_is_dfem(config.method) ? StressRecovery::direct
                                      : StressRecovery::averaged);
    art.stress = table.stress;
    art.displacement.resize(mesh.node_count());
    for (int n = 0; n < mesh.node_count(); ++n)
      art.displacement[n] = {sol.x[sys.dofmap.u(n, 0)], sol.x[sys.dofmap.u(n, 1)]};
    return art;
  }

  // single solve presets
  LoadCase load;
  AnalyticalField exact;
  std::optional<EnrichedModel> enr;
  if (has_crack && method_is_enriched(config.method))
    enr = EnrichedModel::build(mesh, crack, config.scheme);

  const auto bn = all_boundary_nodes(mesh);
  if (config.preset == "linear-patch") {
    exact = linear_patch_field();
    const Eigen::Matrix3d C = mat.elasticity();
    const Eigen::Vector3d strain{0.1, -0.15, 0.45};  // from the linear field
    const Eigen::Vector3d sig = C * strain;
    exact.stress = [sig](Vec2) { return sig; };
    for (int n : bn) {
      const Vec2 u = exact.displacement(mesh.nodes[n]);
      load.dirichlet.push_back({n, 0, u.x});
      load.dirichlet.push_back({n, 1, u.y});
    }
  } else if (config.preset == "griffith-mode-i" || config.preset == "inclined") {
    if (!has_crack) throw std::invalid_argument("run: preset needs a crack");
    const TipFrame frame = tip_frame(crack);
    SifPair k{config.sigma * std::sqrt(M_PI * config.crack_length), 0.0};
    if (config.preset == "inclined")
      k = exact_inclined_sifs(config.sigma, config.crack_length, config.beta);
    exact = exact_westergaard(k.k1, k.k2, frame, mat);
    for (int n : bn) {
      Vec2 p = mesh.nodes[n];
      double dmin = 1e300;
      for (std::size_t i = 0; i + 1 < crack.vertices.size(); ++i)
        dmin = std::min(dmin, segment_distance(p, crack.vertices[i],
                                               crack.vertices[i + 1]));
      if (dmin < 1e-9 * mesh.diameter()) {
        const double ang = crack.tip_angle();
        p += Vec2{-std::sin(ang), std::cos(ang)} * (1e-9 * mesh.diameter());
      }
      const Vec2 u = exact.displacement(p);
      load.dirichlet.push_back({n, 0, u.x});
      load.dirichlet.push_back({n, 1, u.y});
    }
  } else if (config.preset == "plate-hole") {
    exact = exact_plate_hole(1.0, config.sigma, mat);
    const double L = 5.0, tol = 1e-9 * L;
    for (std::size_t i = 0; i < mesh.boundary_edges.size(); ++i) {
      const auto& be = mesh.boundary_edges[i];
      const Vec2 mid = (mesh.nodes[be.a] + mesh.nodes[be.b]) / 2.0;
      if (std::abs(mid.x - L) < tol || std::abs(mid.y - L) < tol) {
        const Vec2 normal = be.normal;
        const AnalyticalField f = exact;
        load.tractions.emplace_back(static_cast<int>(i), [f, normal](Vec2 p) {
          const Eigen::Vector3d s = f.stress(p);
          return Vec2{s[0] * normal.x + s[2] * normal.y,
                      s[2] * normal.x + s[1] * normal.y};
        });
      }
    }
    for (int n = 0; n < mesh.node_count(); ++n) {
      if (std::abs(mesh.nodes[n].y) < tol) load.dirichlet.push_back({n, 1, 0.0});
      if (std::abs(mesh.nodes[n].x) < tol) load.dirichlet.push_back({n, 0, 0.0});
    }
  } else if (config.preset == "timoshenko") {
    const double L = 48.0, W = 12.0, tol = 1e-9 * L;
    exact = exact_timoshenko(1000.0, L, W, mat);
    for (std::size_t i = 0; i < mesh.boundary_edges.size(); ++i) {
      const auto& be = mesh.boundary_edges[i];
      const Vec2 mid = (mesh.nodes[be.a] + mesh.nodes[be.b]) / 2.0;
      if (std::abs(mid.x - L) < tol) {
        const AnalyticalField f = exact;
        load.tractions.emplace_back(static_cast<int>(i), [f](Vec2 p) {
          const Eigen::Vector3d s = f.stress(p);
          return Vec2{s[0], s[2]};
        });
      }
    }
    for (int n = 0; n < mesh.node_count(); ++n)
      if (std::abs(mesh.nodes[n].x) < tol) {
        const Vec2 u = exact.displacement(mesh.nodes[n]);
        load.dirichlet.push_back({n, 0, u.x});
        load.dirichlet.push_back({n, 1, u.y});
      }
  } else {
    throw std::invalid_argument("run: unknown preset '" + config.preset + "'");
  }

  DegenerationSet deg = DegenerationSet::none(mesh.node_count());
  if (method_is_dfem(config.method) && enr)
    deg = degeneration_from_enrichment(enr->enrichment, mesh, crack);
  Basis basis(mesh, patches, deg,
              method_is_dfem(config.method) ? Basis::Kind::dfem : Basis::Kind::t3);
  System sys = assemble(basis, enr ? &*enr : nullptr, mat, load, config.quad);
  apply_dirichlet(sys, load.dirichlet);
  const PcgResult sol =
      pcg_solve(sys.K, sys.f, config.solver_tol, config.solver_max_iter);

  const NormReport rep = l2_and_energy_norms(basis, enr ? &*enr : nullptr, mat,
                                             sys.dofmap, sol.x, exact);
  art.row.case_name = config.preset;
  art.row.method = to_string(config.method);
  art.row.enrichment =
      !enr ? "none"
           : (config.scheme.mode == EnrichmentScheme::Mode::fixed_area
                  ? "fixed"
                  : "topological");
  art.row.dofs = rep.dof_count;
  art.row.h = mesh.diameter() / std::sqrt(double(mesh.triangle_count()));
  art.row.r_d = rep.r_d;
  art.row.r_e = rep.r_e;
  art.row.cg_iters = sol.iterations;
  if (enr && enr->enrichment.tip_element >= 0) {
    const double radius = default_sif_radius(mesh, enr->enrichment);
    const InteractionDomain dom = make_interaction_domain(mesh, crack, radius);
    const SifPair k =
        interaction_integral_sifs(basis, *enr, mat, sys.dofmap, sol.x, dom);
    art.row.k1 = k.k1;
    art.row.k2 = k.k2;
  }

  const auto table = recover_nodal_stress(
      basis, enr ? &*enr : nullptr, patches, sys.dofmap, sol.x, mat,
      method_is_dfem(config.method) ? StressRecovery::direct
                                    : StressRecovery::averaged);
  art.stress = table.stress;
  art.displacement.resize(mesh.node_count());
  for (int n = 0; n < mesh.node_count(); ++n)
    art.displacement[n] = {sol.x[sys.dofmap.u(n, 0)], sol.x[sys.dofmap.u(n, 1)]};
  return art;
}

}  // namespace

int run_case(const RunConfig& config) {
  namespace fs = std::filesystem;
  try {
    const RunArtifacts art = execute(config);
    fs::create_directories(config.output_dir);
    {
      std::ofstream out(fs::path(config.output_dir) / "results.csv");
      out << case_csv_header(false) << "\n" << to_csv(art.row, false) << "\n";
    }
    if (!art.history.empty()) {
      std::ofstream out(fs::path(config.output_dir) / "crack_history.csv");
      out << "step,tip_x,tip_y,K_I,K_II,theta_c\n";
      char buf[200];
      for (const auto& s : art.history) {
        std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      s.step, s.tip.x, s.tip.y, s.sifs.k1, s.sifs.k2, s.theta_c);
        out << buf;
      }
    }
    const Mesh mesh = build_mesh(config);
    export_vtk(mesh, art.displacement, art.stress,
               (fs::path(config.output_dir) / "fields.vtk").string());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

int worker_count() {
  if (const char* env = std::getenv("DFEMLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

namespace {

// Runs fn(i) for i in [0, n) on up to worker_count() threads; results are
// collected by index so output order never depends on scheduling.
template <typename Fn>
void parallel_for(int n, Fn fn) {
  const int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

std::vector<CaseRow> bench_bar1d(const BenchOptions& opt) {
  std::vector<CaseRow> rows;
  for (Method m : opt.methods)
    for (int ne : {4, 8, 16, 32}) rows.push_back(run_bar1d(m, ne));
  return rows;
}

std::vector<CaseRow> bench_plate_hole(const BenchOptions& opt) {
  std::vector<int> sizes = opt.paper_scale ? std::vector<int>{11, 21, 41, 81}
                                           : std::vector<int>{11, 21, 41};
  std::vector<std::pair<Method, int>> cases;
  for (Method m : opt.methods)
    for (int n : sizes) cases.emplace_back(m, n);
  std::vector<CaseRow> rows(cases.size());
  parallel_for(static_cast<int>(cases.size()), [&](int i) {
    rows[i] = run_plate_hole(cases[i].first, cases[i].second);
  });
  return rows;
}

std::vector<CaseRow> bench_timoshenko(const BenchOptions& opt) {
  const std::vector<std::pair<int, int>> meshes{{10, 3}, {20, 6}, {40, 12}, {80, 24}};
  std::vector<std::pair<Method, std::pair<int, int>>> cases;
  for (Method m : opt.methods)
    for (auto mesh : meshes) cases.emplace_back(m, mesh);
  std::vector<CaseRow> rows(cases.size());
  parallel_for(static_cast<int>(cases.size()), [&](int i) {
    rows[i] = run_timoshenko(cases[i].first, cases[i].second.first,
                             cases[i].second.second);
  });
  return rows;
}

std::vector<CaseRow> bench_griffith(const BenchOptions& opt) {
  std::vector<int> sizes =
      opt.paper_scale ? std::vector<int>{11, 47, 61, 91} : std::vector<int>{11, 47, 61};
  struct Case {
    Method m;
    int intervals;
    double distortion;
  };
  std::vector<Case> cases;
  for (Method m : opt.methods)
    for (int n : sizes)
      for (double dist : {0.0, 0.2}) cases.push_back({m, n, dist});
  std::vector<CaseRow> rows(cases.size());
  parallel_for(static_cast<int>(cases.size()), [&](int i) {
    GriffithOptions g;
    g.intervals = cases[i].intervals;
    g.distortion = cases[i].distortion;
    g.seed = 20260810;
    g.scheme = opt.scheme;
    rows[i] = run_griffith(cases[i].m, g);
  });
  return rows;
}

std::vector<CaseRow> bench_inclined(const BenchOptions& opt) {
  std::vector<double> betas;
  for (int i = 0; i < opt.angles; ++i)
    betas.push_back(0.5 * M_PI * i / (opt.angles - 1));
  std::vector<std::pair<Method, double>> cases;
  for (Method m : opt.methods)
    for (double b : betas) cases.emplace_back(m, b);
  std::vector<CaseRow> rows(cases.size());
  parallel_for(static_cast<int>(cases.size()), [&](int i) {
    rows[i] = run_inclined(cases[i].first, cases[i].second);
  });
  return rows;
}

std::vector<CaseRow> bench_three_hole(const BenchOptions& opt) {
  std::vector<int> which = opt.cases.empty() ? std::vector<int>{2} : opt.cases;
  std::vector<CaseRow> rows;
  for (int c : which)
    for (Method m : opt.methods) {
      ThreeHoleOptions o;
      o.case_id = c;
      o.paper_scale = opt.paper_scale;
      o.method = m;
      rows.push_back(run_three_hole(o).row);
    }
  return rows;
}

void write_rows_csv(const std::vector<CaseRow>& rows, const std::string& path,
                    bool with_wall) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << case_csv_header(with_wall) << "\n";
  for (const auto& r : rows) out << to_csv(r, with_wall) << "\n";
}

std::vector<std::string> slope_summary(const std::vector<CaseRow>& rows) {
  std::map<std::pair<std::string, std::string>,
           std::vector<std::pair<double, double>>>
      d_series, e_series;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.case_name, r.method + "/" + r.enrichment);
    if (r.r_d > 0) d_series[key].push_back({r.h, r.r_d});
    if (r.r_e > 0) e_series[key].push_back({r.h, r.r_e});
  }
  std::vector<std::string> lines;
  for (const auto& [key, series] : d_series) {
    if (series.size() < 2) continue;
    char buf[200];
    std::snprintf(buf, sizeof buf, "slope,%s,%s,R_d,%.4f", key.first.c_str(),
                  key.second.c_str(), convergence_rate(series));
    lines.push_back(buf);
  }
  for (const auto& [key, series] : e_series) {
    if (series.size() < 2) continue;
    char buf[200];
    std::snprintf(buf, sizeof buf, "slope,%s,%s,R_e,%.4f", key.first.c_str(),
                  key.second.c_str(), convergence_rate(series));
    lines.push_back(buf);
  }
  return lines;
}

}  // namespace dfem
