#include "dfemlab/bar1d.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dfemlab/quadrature.hpp"

namespace dfem {

namespace {

// Averaged hat-function slopes at a node: pairs (node, slope). The host
// element matters only for degenerated nodes.
void slope_row(const std::vector<double>& nodes, int node, int host,
               const std::vector<char>& degenerated, std::vector<int>& idx,
               std::vector<double>& slope) {
  idx.clear();
  slope.clear();
  const int n = static_cast<int>(nodes.size());
  const bool end_node = node == 0 || node == n - 1;
  if (end_node || degenerated[node]) {
    const double h = nodes[host + 1] - nodes[host];
    idx = {host, host + 1};
    slope = {-1.0 / h, 1.0 / h};
    return;
  }
  const double hl = nodes[node] - nodes[node - 1];
  const double hr = nodes[node + 1] - nodes[node];
  const double wl = hl / (hl + hr), wr = hr / (hl + hr);
  idx = {node - 1, node, node + 1};
  slope = {wl * (-1.0 / hl), wl * (1.0 / hl) + wr * (-1.0 / hr), wr * (1.0 / hr)};
}

}  // namespace

Shape1D shape_functions_1d(const std::vector<double>& nodes, int element,
                           double x, const std::vector<char>& degenerated) {
  const int n = static_cast<int>(nodes.size());
  if (element < 0 || element + 1 >= n)
    throw std::invalid_argument("shape_functions_1d: bad element");
  const double xi = nodes[element], xj = nodes[element + 1];
  const double c = xj - xi;
  if (x < xi - 1e-12 * c || x > xj + 1e-12 * c)
    throw std::domain_error("shape_functions_1d: point outside element");

  const double Lj = (x - xi) / c, Li = 1.0 - Lj;
  const double dLi = -1.0 / c, dLj = 1.0 / c;
  const double phi_i = Li + Li * Li * Lj - Li * Lj * Lj;
  const double dphi_i = dLi * (1.0 + 2.0 * Li * Lj - Lj * Lj) + dLj * (Li * Li - 2.0 * Li * Lj);
  const double psi_i = c * Lj * Li * Li;
  const double dpsi_i = c * (dLj * Li * Li + 2.0 * Li * dLi * Lj);
  const double phi_j = Lj + Lj * Lj * Li - Lj * Li * Li;
  const double dphi_j = dLj * (1.0 + 2.0 * Li * Lj - Li * Li) + dLi * (Lj * Lj - 2.0 * Li * Lj);
  const double psi_j = -c * Li * Lj * Lj;
  const double dpsi_j = -c * (dLi * Lj * Lj + 2.0 * Lj * dLj * Li);

  Shape1D out;
  out.support = {element - 1, element, element + 1, element + 2};
  out.support.erase(
      std::remove_if(out.support.begin(), out.support.end(),
                     [n](int k) { return k < 0 || k >= n; }),
      out.support.end());
  out.value.assign(out.support.size(), 0.0);
  out.deriv.assign(out.support.size(), 0.0);

  auto add = [&](int node, double v, double d) {
    for (std::size_t k = 0; k < out.support.size(); ++k)
      if (out.support[k] == node) {
        out.value[k] += v;
        out.deriv[k] += d;
        return;
      }
  };

  add(element, phi_i, dphi_i);
  add(element + 1, phi_j, dphi_j);
  std::vector<int> idx;
  std::vector<double> slope;
  slope_row(nodes, element, element, degenerated, idx, slope);
  for (std::size_t k = 0; k < idx.size(); ++k)
    add(idx[k], psi_i * slope[k], dpsi_i * slope[k]);
  slope_row(nodes, element + 1, element, degenerated, idx, slope);
  for (std::size_t k = 0; k < idx.size(); ++k)
    add(idx[k], psi_j * slope[k], dpsi_j * slope[k]);
  return out;
}

Bar1DField exact_bar_1d(const Bar1DProblem& p) {
  if (p.length <= 0 || p.area <= 0 || p.modulus <= 0)
    throw std::invalid_argument("exact_bar_1d: parameters must be positive");
  const double L = p.length, EA = p.modulus * p.area;
  const double f = p.body_force, A = p.area;
  Bar1DField field;
  field.displacement = [=](double x) {
    const double s = x / L;
    return f * L * L / EA * (s - 0.5 * s * s);
  };
  field.stress = [=](double x) { return f * L / A * (1.0 - x / L); };
  return field;
}

namespace {

Shape1D eval_1d(const Bar1DResult& r, Bar1DMethod method, int e, double x) {
  if (method == Bar1DMethod::dfem) {
    std::vector<char> deg(r.nodes.size(), 0);
    return shape_functions_1d(r.nodes, e, x, deg);
  }
  const double h = r.nodes[e + 1] - r.nodes[e];
  Shape1D s;
  s.support = {e, e + 1};
  const double Lj = (x - r.nodes[e]) / h;
  s.value = {1.0 - Lj, Lj};
  s.deriv = {-1.0 / h, 1.0 / h};
  return s;
}

}  // namespace

double eval_bar_solution(const Bar1DResult& r, Bar1DMethod method, double x,
                         bool derivative) {
  const int ne = static_cast<int>(r.nodes.size()) - 1;
  int e = 0;
  while (e + 1 < ne && x > r.nodes[e + 1]) ++e;
  const Shape1D s = eval_1d(r, method, e, x);
  double v = 0.0;
  for (std::size_t k = 0; k < s.support.size(); ++k)
    v += (derivative ? s.deriv[k] : s.value[k]) * r.u[s.support[k]];
  return v;
}

Bar1DResult solve_bar_1d(const Bar1DProblem& p, Bar1DMethod method) {
  const int ne = p.elements, n = ne + 1;
  Bar1DResult r;
  r.nodes.resize(n);
  for (int i = 0; i < n; ++i) r.nodes[i] = p.length * i / ne;

  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  const LineRule& rule = line_rule(7);
  const double EA = p.modulus * p.area;
  for (int e = 0; e < ne; ++e) {
    const double h = r.nodes[e + 1] - r.nodes[e];
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double x = r.nodes[e] + rule.points[q] * h;
      const double w = rule.weights[q] * h;
      const Shape1D s = eval_1d(r, method, e, x);
      const int m = static_cast<int>(s.support.size());
      for (int a = 0; a < m; ++a) {
        f(s.support[a]) += w * p.body_force * s.value[a];
        for (int b = 0; b < m; ++b)
          K(s.support[a], s.support[b]) += w * EA * s.deriv[a] * s.deriv[b];
      }
    }
  }
  // u(0) = 0 by symmetric elimination
  K.row(0).setZero();
  K.col(0).setZero();
  K(0, 0) = 1.0;
  f(0) = 0.0;
  Eigen::VectorXd u = K.ldlt().solve(f);
  r.u.assign(u.data(), u.data() + n);

  // relative L2 and energy-norm errors against the closed form
  const Bar1DField exact = exact_bar_1d(p);
  double num_d = 0.0, den_d = 0.0, num_e = 0.0, den_e = 0.0;
  const LineRule& nrule = line_rule(9);
  for (int e = 0; e < ne; ++e) {
    const double h = r.nodes[e + 1] - r.nodes[e];
    for (std::size_t q = 0; q < nrule.points.size(); ++q) {
      const double x = r.nodes[e] + nrule.points[q] * h;
      const double w = nrule.weights[q] * h;
      const double uh = eval_bar_solution(r, method, x, false);
      const double gh = eval_bar_solution(r, method, x, true);
      const double ue = exact.displacement(x);
      const double se = exact.stress(x);
      const double sh = p.modulus * gh;  // stress = E u'
      num_d += w * (uh - ue) * (uh - ue);
      den_d += w * ue * ue;
      num_e += w * (sh - se) * (gh - se / p.modulus) * p.area;
      den_e += w * se * (se / p.modulus) * p.area;
    }
  }
  r.r_d = std::sqrt(num_d / den_d);
  r.r_e = std::sqrt(num_e / den_e);
  return r;
}

}  // namespace dfem
