#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dfemlab/bar1d.hpp"
#include "dfemlab/sif.hpp"

namespace dfem {

enum class Method { fem, dfem, xfem, xdfem };

Method method_from_string(const std::string& s);
std::string to_string(Method m);
inline bool method_is_dfem(Method m) {
  return m == Method::dfem || m == Method::xdfem;
}
inline bool method_is_enriched(Method m) {
  return m == Method::xfem || m == Method::xdfem;
}

struct CaseRow {
  std::string case_name, method, enrichment;
  int dofs = 0;
  double h = 0.0;
  double r_d = 0.0, r_e = 0.0;
  double k1 = 0.0, k2 = 0.0;
  int cg_iters = 0;
  double wall_ms = 0.0;
};

std::string case_csv_header(bool with_wall);
std::string to_csv(const CaseRow& row, bool with_wall);

/// 1D bar with unit parameters.
CaseRow run_bar1d(Method method, int elements);

/// Quarter plate with a hole, L = 5, a = 1; n nodes per direction.
CaseRow run_plate_hole(Method method, int n, double solver_tol = 1e-10);

/// Cantilever 48 x 12; nx x ny cells.
CaseRow run_timoshenko(Method method, int nx, int ny, double solver_tol = 1e-10);

enum class GriffithRegime { explicit_slit, heaviside_only, full };

struct GriffithOptions {
  int intervals = 11;            // odd for enriched runs, even for the slit
  double distortion = 0.0;
  std::uint64_t seed = 0;
  GriffithRegime regime = GriffithRegime::full;
  EnrichmentScheme scheme = EnrichmentScheme::topological();
  double solver_tol = 1e-10;
  bool almost_polar = false;
};

/// Mode-I near-tip square (10 x 10) with exact displacement on the outer
/// boundary; reports norms, extracted SIFs and CG iterations.
CaseRow run_griffith(Method method, const GriffithOptions& options);

/// Mixed-mode SIF extraction at inclination beta; k1/k2 are normalized by
/// sigma sqrt(pi a).
CaseRow run_inclined(Method method, double beta, int intervals = 47,
                     double solver_tol = 1e-10);

struct ThreeHoleOptions {
  int case_id = 2;         // 1, 2, 3 per the test matrix
  bool paper_scale = false;
  int steps = -1;          // -1: scale default (desk 20 / paper table value)
  Method method = Method::xdfem;
};

struct ThreeHoleResult {
  PropagationOutcome outcome;
  CaseRow row;
  double crack_x0 = 0.0;  // initial crack line
  double hole_x = 0.0;    // hole column
};

ThreeHoleResult run_three_hole(const ThreeHoleOptions& options);

}  // namespace dfem
