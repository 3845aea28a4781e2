#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dfemlab/benchmarks.hpp"

namespace dfem {

struct RunConfig {
  int version = 1;

  // mesh source: a file or one generator
  std::string mesh_file;
  struct Generator {
    std::string type;  // rect | centered-square | plate-hole | slit | three-hole
    int nx = 8, ny = 8, n = 11, intervals = 11;
    double width = 1.0, height = 1.0, size = 10.0;
    double length = 5.0, radius = 1.0, grading = 1.6;
    double x0 = 0.0, y0 = 0.0;
    double distortion = 0.0;
    std::uint64_t seed = 0;
  };
  std::optional<Generator> generator;

  Method method = Method::dfem;
  Material material;
  std::string preset;  // linear-patch | griffith-mode-i | inclined |
                       // plate-hole | timoshenko | three-hole
  double sigma = 1.0, crack_length = 1.0, beta = 0.0;

  std::vector<Vec2> crack;
  EnrichmentScheme scheme = EnrichmentScheme::topological();
  double solver_tol = 1e-10;
  int solver_max_iter = -1;
  QuadratureConfig quad;
  struct Propagation {
    double increment = 0.1;
    int steps = 10;
  };
  std::optional<Propagation> propagation;
  std::string output_dir = ".";
  std::uint64_t seed = 0;
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// Executes one configured case; writes results.csv, fields.vtk and,
/// when propagating, crack_history.csv into the output directory.
/// Returns 0 on success.
int run_case(const RunConfig& config);

struct BenchOptions {
  std::vector<Method> methods;
  bool paper_scale = false;
  std::string out_dir = ".";
  EnrichmentScheme scheme = EnrichmentScheme::topological();
  int angles = 7;          // inclined study
  std::vector<int> cases;  // three-hole study
};

std::vector<CaseRow> bench_bar1d(const BenchOptions&);
std::vector<CaseRow> bench_plate_hole(const BenchOptions&);
std::vector<CaseRow> bench_timoshenko(const BenchOptions&);
std::vector<CaseRow> bench_griffith(const BenchOptions&);
std::vector<CaseRow> bench_inclined(const BenchOptions&);
std::vector<CaseRow> bench_three_hole(const BenchOptions&);

void write_rows_csv(const std::vector<CaseRow>& rows, const std::string& path,
                    bool with_wall);

/// Per (case, method) least-squares slopes of R_d and R_e against h.
std::vector<std::string> slope_summary(const std::vector<CaseRow>& rows);

/// Worker cap: DFEMLAB_THREADS when set, hardware concurrency otherwise.
int worker_count();

}  // namespace dfem
