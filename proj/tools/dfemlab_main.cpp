#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "dfemlab/runner.hpp"

namespace {

std::vector<dfem::Method> parse_methods(const std::string& csv) {
  std::vector<dfem::Method> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string tok = csv.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!tok.empty()) out.push_back(dfem::method_from_string(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw CLI::ValidationError("--methods", "no methods given");
  return out;
}

int run_bench(const std::string& study, const dfem::BenchOptions& opt) {
  using namespace dfem;
  std::vector<CaseRow> rows;
  if (study == "bar1d")
    rows = bench_bar1d(opt);
  else if (study == "plate-hole")
    rows = bench_plate_hole(opt);
  else if (study == "timoshenko")
    rows = bench_timoshenko(opt);
  else if (study == "griffith")
    rows = bench_griffith(opt);
  else if (study == "inclined")
    rows = bench_inclined(opt);
  else if (study == "three-hole")
    rows = bench_three_hole(opt);
  else {
    std::fprintf(stderr, "error: unknown study '%s'\n", study.c_str());
    return 2;
  }
  std::filesystem::create_directories(opt.out_dir);
  const auto csv = std::filesystem::path(opt.out_dir) / (study + ".csv");
  write_rows_csv(rows, csv.string(), true);
  for (const auto& r : rows) std::puts(to_csv(r, true).c_str());
  const auto slopes = slope_summary(rows);
  if (!slopes.empty()) {
    std::ofstream sout(std::filesystem::path(opt.out_dir) / (study + "_slopes.csv"));
    for (const auto& line : slopes) {
      std::puts(line.c_str());
      sout << line << "\n";
    }
  }
  std::printf("wrote %s (%zu rows)\n", csv.string().c_str(), rows.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D linear-elastic solver laboratory (T3 FEM / DFEM / XFEM / XDFEM)"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run one configured case");
  run->add_option("config", config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);

  std::string study, methods_csv = "fem,dfem", out_dir = ".", scale = "desk";
  std::string enrichment = "topological";
  double fixed_radius = 0.2;
  int angles = 7;
  std::vector<int> cases;
  auto* bench = app.add_subcommand("bench", "run a benchmark study");
  bench->add_option("study", study,
                    "bar1d | plate-hole | timoshenko | griffith | inclined | three-hole")
      ->required();
  bench->add_option("--methods", methods_csv, "comma-separated methods");
  bench->add_option("--enrichment", enrichment, "topological | fixed");
  bench->add_option("--fixed-radius", fixed_radius, "fixed-area radius");
  bench->add_option("--scale", scale, "desk | paper");
  bench->add_option("--angles", angles, "inclined: number of angles");
  bench->add_option("--cases", cases, "three-hole: case ids");
  bench->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return dfem::run_case(dfem::load_run_config(config_path));
    dfem::BenchOptions opt;
    opt.methods = parse_methods(methods_csv);
    opt.paper_scale = scale == "paper";
    opt.out_dir = out_dir;
    opt.angles = angles;
    opt.cases = cases;
    if (enrichment == "fixed")
      opt.scheme = dfem::EnrichmentScheme::fixed_area(fixed_radius);
    return run_bench(study, opt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
