#pragma once

#include <functional>
#include <vector>

namespace dfem {

/// 1D double-interpolation shape functions over an element [x_i, x_i+1].
/// Support covers at most {i-1, i, i+1, i+2}; end nodes of the chain
/// degenerate automatically (their patch is a single element).
struct Shape1D {
  std::vector<int> support;
  std::vector<double> value, deriv;
};

Shape1D shape_functions_1d(const std::vector<double>& nodes, int element,
                           double x, const std::vector<char>& degenerated);

struct Bar1DProblem {
  double length = 1.0;
  double area = 1.0;
  double modulus = 1.0;
  double body_force = 1.0;
  int elements = 8;
};

struct Bar1DField {
  std::function<double(double)> displacement;
  std::function<double(double)> stress;
};

/// u = fL^2/EA (x/L - (x/L)^2/2), sigma = fL/A (1 - x/L).
Bar1DField exact_bar_1d(const Bar1DProblem& p);

struct Bar1DResult {
  std::vector<double> nodes;
  std::vector<double> u;     // nodal displacements
  double r_d = 0.0;          // relative L2 displacement error
  double r_e = 0.0;          // relative energy norm error
};

enum class Bar1DMethod { fem, dfem };

Bar1DResult solve_bar_1d(const Bar1DProblem& p, Bar1DMethod method);

/// Displacement and stress of the numerical solution at a point.
double eval_bar_solution(const Bar1DResult& r, Bar1DMethod method, double x,
                         bool derivative);

}  // namespace dfem
