#include <doctest.h>

#include <cmath>
#include <vector>

#include "dfemlab/bar1d.hpp"
#include "dfemlab/norms.hpp"

using namespace dfem;

TEST_CASE("exact 1D bar fields") {
  Bar1DProblem p;  // unit parameters
  const Bar1DField f = exact_bar_1d(p);
  CHECK(f.displacement(0.0) == doctest::Approx(0.0));
  CHECK(f.stress(0.0) == doctest::Approx(1.0));
  CHECK(f.displacement(1.0) == doctest::Approx(0.5));
  CHECK(f.stress(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  // compatibility of the two displays: EA u' = sigma A
  for (int k = 0; k <= 10; ++k) {
    const double x = k / 10.0, h = 1e-7;
    const double du = (f.displacement(x + h) - f.displacement(std::max(0.0, x - h))) /
                      (x - h < 0.0 ? h : 2 * h);
    CHECK(du == doctest::Approx(f.stress(x)).epsilon(1e-6));
  }
}

TEST_CASE("1D shape functions") {
  std::vector<double> nodes;
  for (int i = 0; i <= 6; ++i) nodes.push_back(i / 6.0);
  const std::vector<char> deg(nodes.size(), 0);

  SUBCASE("delta at nodes") {
    const Shape1D s = shape_functions_1d(nodes, 2, nodes[2], deg);
    for (std::size_t k = 0; k < s.support.size(); ++k)
      CHECK(s.value[k] ==
            doctest::Approx(s.support[k] == 2 ? 1.0 : 0.0).epsilon(1e-12));
  }
  SUBCASE("partition of unity at a midpoint, interior element") {
    const double mid = 0.5 * (nodes[2] + nodes[3]);
    const Shape1D s = shape_functions_1d(nodes, 2, mid, deg);
    CHECK(s.support.size() == 4);
    double sum = 0.0, dsum = 0.0;
    for (std::size_t k = 0; k < s.support.size(); ++k) {
      sum += s.value[k];
      dsum += s.deriv[k];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(dsum) < 1e-10);
  }
  SUBCASE("quadratic data reproduced exactly on interior elements") {
    // averaged slopes of x^2 on a uniform mesh are central differences,
    // which are exact for quadratics
    const double mid = 0.5 * (nodes[2] + nodes[3]);
    const Shape1D s = shape_functions_1d(nodes, 2, mid, deg);
    double val = 0.0;
    for (std::size_t k = 0; k < s.support.size(); ++k)
      val += s.value[k] * nodes[s.support[k]] * nodes[s.support[k]];
    CHECK(val == doctest::Approx(mid * mid).epsilon(1e-12));
  }
  SUBCASE("point outside the element throws") {
    CHECK_THROWS(shape_functions_1d(nodes, 2, 0.9, deg));
  }
}

TEST_CASE("1D bar: both methods converge, double interpolation is better") {
  Bar1DProblem p;
  p.elements = 8;
  const Bar1DResult fem = solve_bar_1d(p, Bar1DMethod::fem);
  const Bar1DResult dfem = solve_bar_1d(p, Bar1DMethod::dfem);
  CHECK(dfem.r_d < fem.r_d);
  CHECK(dfem.r_e < fem.r_e);
  // linear FEM nodal values are exact for this problem
  const Bar1DField exact = exact_bar_1d(p);
  for (std::size_t i = 0; i < fem.nodes.size(); ++i)
    CHECK(fem.u[i] == doctest::Approx(exact.displacement(fem.nodes[i])).epsilon(1e-10));
}

TEST_CASE("1D bar convergence rates") {
  std::vector<std::pair<double, double>> fem_d, dfem_d;
  for (int ne : {4, 8, 16, 32}) {
    Bar1DProblem p;
    p.elements = ne;
    fem_d.push_back({1.0 / ne, solve_bar_1d(p, Bar1DMethod::fem).r_d});
    dfem_d.push_back({1.0 / ne, solve_bar_1d(p, Bar1DMethod::dfem).r_d});
  }
  const double fem_slope = convergence_rate(fem_d);
  const double dfem_slope = convergence_rate(dfem_d);
  CHECK(fem_slope > 1.9);
  CHECK(fem_slope < 2.1);
  CHECK(dfem_slope > 2.0);
  CHECK(dfem_slope <= 3.0);
}
