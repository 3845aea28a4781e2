#include "dfemlab/quadrature.hpp"

#include <stdexcept>

namespace dfem {

namespace {

void add_point(TriRule& r, double a, double b, double c, double w) {
  r.points.push_back({a, b, c});
  r.weights.push_back(w);
}

// Fully symmetric orbit of (a, b, b).
void add_orbit3(TriRule& r, double a, double b, double w) {
  add_point(r, a, b, b, w);
  add_point(r, b, a, b, w);
  add_point(r, b, b, a, w);
}

// Orbit of (a, b, c) over all 6 permutations.
void add_orbit6(TriRule& r, double a, double b, double c, double w) {
  add_point(r, a, b, c, w);
  add_point(r, a, c, b, w);
  add_point(r, b, a, c, w);
  add_point(r, b, c, a, w);
  add_point(r, c, a, b, w);
  add_point(r, c, b, a, w);
}

TriRule make_degree1() {
  TriRule r;
  r.degree = 1;
  add_point(r, 1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0);
  return r;
}

TriRule make_degree2() {
  TriRule r;
  r.degree = 2;
  add_orbit3(r, 2.0 / 3, 1.0 / 6, 1.0 / 3);
  return r;
}

// Dunavant 7-point, degree 5.
TriRule make_degree5() {
  TriRule r;
  r.degree = 5;
  add_point(r, 1.0 / 3, 1.0 / 3, 1.0 / 3, 0.225);
  add_orbit3(r, 0.059715871789770, 0.470142064105115, 0.132394152788506);
  add_orbit3(r, 0.797426985353087, 0.101286507323456, 0.125939180544827);
  return r;
}

// Dunavant 12-point, degree 6 (used for quadrature sufficiency checks).
TriRule make_degree6() {
  TriRule r;
  r.degree = 6;
  add_orbit3(r, 0.501426509658179, 0.249286745170910, 0.116786275726379);
  add_orbit3(r, 0.873821971016996, 0.063089014491502, 0.050844906370207);
  add_orbit6(r, 0.053145049844817, 0.310352451033784, 0.636502499121399,
             0.082851075618374);
  return r;
}

// Dunavant 16-point, degree 8.
TriRule make_degree8() {
  TriRule r;
  r.degree = 8;
  add_point(r, 1.0 / 3, 1.0 / 3, 1.0 / 3, 0.144315607677787);
  add_orbit3(r, 0.081414823414554, 0.459292588292723, 0.095091634413245);
  add_orbit3(r, 0.658861384496480, 0.170569307751760, 0.103217370534718);
  add_orbit3(r, 0.898905543365938, 0.050547228317031, 0.032458497623198);
  add_orbit6(r, 0.008394777409958, 0.263112829634638, 0.728492392955404,
             0.027230314174435);
  return r;
}

// Gauss-Legendre on [-1,1], weights summing to 2.
struct Gauss {
  std::vector<double> x, w;
};

Gauss gauss_legendre(int n) {
  switch (n) {
    case 1:
      return {{0.0}, {2.0}};
    case 2:
      return {{-0.5773502691896257, 0.5773502691896257}, {1.0, 1.0}};
    case 3:
      return {{-0.7745966692414834, 0.0, 0.7745966692414834},
              {5.0 / 9, 8.0 / 9, 5.0 / 9}};
    case 4:
      return {{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
               0.8611363115940526},
              {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
               0.3478548451374538}};
    case 5:
      return {{-0.9061798459386640, -0.5384693101056831, 0.0,
               0.5384693101056831, 0.9061798459386640},
              {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
               0.4786286704993665, 0.2369268850561891}};
    case 6:
      return {{-0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
               0.2386191860831969, 0.6612093864662645, 0.9324695142031521},
              {0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
               0.4679139345726910, 0.3607615730481386, 0.1713244923791704}};
    case 8:
      return {{-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
               -0.1834346424956498, 0.1834346424956498, 0.5255324099163290,
               0.7966664774136267, 0.9602898564975363},
              {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
               0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
               0.2223810344533745, 0.1012285362903763}};
    default:
      throw std::invalid_argument("gauss_legendre: unsupported point count");
  }
}

LineRule make_line(int n, int degree) {
  const Gauss g = gauss_legendre(n);
  LineRule r;
  r.degree = degree;
  for (int i = 0; i < n; ++i) {
    r.points.push_back(0.5 * (g.x[i] + 1.0));
    r.weights.push_back(0.5 * g.w[i]);
  }
  return r;
}

}  // namespace

const TriRule& tri_rule(int degree) {
  static const TriRule d1 = make_degree1();
  static const TriRule d2 = make_degree2();
  static const TriRule d5 = make_degree5();
  static const TriRule d6 = make_degree6();
  static const TriRule d8 = make_degree8();
  if (degree <= 1) return d1;
  if (degree <= 2) return d2;
  if (degree <= 5) return d5;
  if (degree <= 6) return d6;
  if (degree <= 8) return d8;
  throw std::invalid_argument("tri_rule: degree > 8 not stocked");
}

const LineRule& line_rule(int degree) {
  static const LineRule l1 = make_line(1, 1);
  static const LineRule l3 = make_line(2, 3);
  static const LineRule l5 = make_line(3, 5);
  static const LineRule l7 = make_line(4, 7);
  static const LineRule l9 = make_line(5, 9);
  static const LineRule l11 = make_line(6, 11);
  static const LineRule l15 = make_line(8, 15);
  if (degree <= 1) return l1;
  if (degree <= 3) return l3;
  if (degree <= 5) return l5;
  if (degree <= 7) return l7;
  if (degree <= 9) return l9;
  if (degree <= 11) return l11;
  if (degree <= 15) return l15;
  throw std::invalid_argument("line_rule: degree > 15 not stocked");
}

TriRule duffy_rule(int apex, int points_per_direction) {
  const Gauss g = gauss_legendre(points_per_direction);
  TriRule r;
  r.degree = 2 * points_per_direction - 1;
  const int i0 = apex, i1 = (apex + 1) % 3, i2 = (apex + 2) % 3;
  for (int a = 0; a < points_per_direction; ++a) {
    const double xi = 0.5 * (g.x[a] + 1.0);
    const double wxi = 0.5 * g.w[a];
    for (int b = 0; b < points_per_direction; ++b) {
      const double eta = 0.5 * (g.x[b] + 1.0);
      const double weta = 0.5 * g.w[b];
      std::array<double, 3> p{};
      p[i0] = 1.0 - xi;
      p[i1] = xi * (1.0 - eta);
      p[i2] = xi * eta;
      r.points.push_back(p);
      // Jacobian of the collapsed map is 2*A*xi; weights stay normalized
      // to sum 1 via the factor 2*xi.
      r.weights.push_back(wxi * weta * 2.0 * xi);
    }
  }
  return r;
}

}  // namespace dfem
