#include "dfemlab/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace dfem {

AnalyticalField exact_plate_hole(double a, double far_stress,
                                 const Material& material) {
  if (a <= 0.0) throw std::invalid_argument("exact_plate_hole: a > 0");
  material.validate();
  const double mu = material.mu(), kappa = material.kappa(), S = far_stress;

  auto polar = [a](Vec2 p) {
    const double r = p.norm();
    if (r < a * (1.0 - 1e-12))
      throw std::domain_error("exact_plate_hole: point inside the hole");
    return std::pair<double, double>{r, std::atan2(p.y, p.x)};
  };

  AnalyticalField f;
  f.stress = [=](Vec2 p) {
    const auto [r, th] = polar(p);
    const double q2 = a * a / (r * r), q4 = 1.5 * std::pow(a / r, 4);
    const double c2 = std::cos(2 * th), c4 = std::cos(4 * th);
    const double s2 = std::sin(2 * th), s4 = std::sin(4 * th);
    Eigen::Vector3d s;
    s[0] = S * (1.0 - q2 * (1.5 * c2 + c4) + q4 * c4);
    s[1] = S * (-q2 * (0.5 * c2 - c4) - q4 * c4);
    s[2] = S * (-q2 * (0.5 * s2 + s4) + q4 * s4);
    return s;
  };
  f.displacement = [=](Vec2 p) {
    const auto [r, th] = polar(p);
    const double c1 = std::cos(th), c3 = std::cos(3 * th);
    const double s1 = std::sin(th), s3 = std::sin(3 * th);
    const double ra = r / a, ar = a / r, ar3 = std::pow(a / r, 3);
    const double ux = S * a / (8.0 * mu) *
                      (ra * (kappa + 1.0) * c1 +
                       2.0 * ar * ((1.0 + kappa) * c1 + c3) - 2.0 * ar3 * c3);
    const double uy = S * a / (8.0 * mu) *
                      (ra * (kappa - 3.0) * s1 +
                       2.0 * ar * ((1.0 - kappa) * s1 + s3) - 2.0 * ar3 * s3);
    return Vec2{ux, uy};
  };
  return f;
}

AnalyticalField exact_timoshenko(double P, double L, double W,
                                 const Material& material) {
  material.validate();
  const double E = material.E, nu = material.nu;
  const double I = W * W * W / 12.0;

  AnalyticalField f;
  f.displacement = [=](Vec2 p) {
    const double x = p.x, y = p.y;
    const double ux =
        P * y / (6.0 * E * I) *
        ((6.0 * L - 3.0 * x) * x + (2.0 + nu) * (y * y - W * W / 4.0));
    const double uy = -P / (6.0 * E * I) *
                      (3.0 * nu * y * y * (L - x) +
                       (4.0 + 5.0 * nu) * W * W * x / 4.0 + (3.0 * L - x) * x * x);
    return Vec2{ux, uy};
  };
  f.stress = [=](Vec2 p) {
    Eigen::Vector3d s;
    s[0] = P * (L - p.x) * p.y / I;
    s[1] = 0.0;
    s[2] = -P / (2.0 * I) * (W * W / 4.0 - p.y * p.y);
    return s;
  };
  return f;
}

namespace {

struct ModeShapes {
  double g1, g2, g3, g4;    // angular factors of u1, u2 (I then II)
  double d1, d2, d3, d4;    // their theta-derivatives
};

ModeShapes mode_shapes(double theta, double kappa) {
  const double sh = std::sin(0.5 * theta), ch = std::cos(0.5 * theta);
  ModeShapes m;
  m.g1 = ch * (kappa - 1.0) + 2.0 * ch * sh * sh;
  m.d1 = -0.5 * sh * (kappa - 1.0) + (2.0 * ch * ch * sh - sh * sh * sh);
  m.g2 = sh * (kappa + 1.0) - 2.0 * sh * ch * ch;
  m.d2 = 0.5 * ch * (kappa + 1.0) - (ch * ch * ch - 2.0 * sh * sh * ch);
  m.g3 = sh * (kappa + 1.0) + 2.0 * sh * ch * ch;
  m.d3 = 0.5 * ch * (kappa + 1.0) + (ch * ch * ch - 2.0 * sh * sh * ch);
  m.g4 = ch * (1.0 - kappa) + 2.0 * ch * sh * sh;
  m.d4 = -0.5 * sh * (1.0 - kappa) + (2.0 * ch * ch * sh - sh * sh * sh);
  return m;
}

}  // namespace

AnalyticalField exact_westergaard(double k1, double k2, const TipFrame& frame,
                                  const Material& material) {
  material.validate();
  const double mu = material.mu(), kappa = material.kappa();

  auto polar = [frame](Vec2 p) {
    const auto pol = frame.polar(p);
    if (pol.r <= 0.0) throw std::domain_error("exact_westergaard: r = 0");
    return pol;
  };

  AnalyticalField f;
  f.stress = [=](Vec2 p) {
    const auto pol = polar(p);
    const double c = 1.0 / std::sqrt(2.0 * M_PI * pol.r);
    const double sh = std::sin(0.5 * pol.theta), ch = std::cos(0.5 * pol.theta);
    const double s3 = std::sin(1.5 * pol.theta), c3 = std::cos(1.5 * pol.theta);
    const double sxx = c * (k1 * ch * (1.0 - sh * s3) - k2 * sh * (2.0 + ch * c3));
    const double syy = c * (k1 * ch * (1.0 + sh * s3) + k2 * sh * ch * c3);
    const double sxy = c * (k1 * sh * ch * c3 + k2 * ch * (1.0 - sh * s3));
    // rotate the tip-frame tensor into the global frame
    Eigen::Matrix2d sl;
    sl << sxx, sxy, sxy, syy;
    Eigen::Matrix2d R;
    R << frame.c, -frame.s, frame.s, frame.c;
    const Eigen::Matrix2d sg = R * sl * R.transpose();
    return Eigen::Vector3d{sg(0, 0), sg(1, 1), sg(0, 1)};
  };
  f.displacement = [=](Vec2 p) {
    const auto pol = polar(p);
    const double amp = std::sqrt(pol.r / (2.0 * M_PI)) / (2.0 * mu);
    const ModeShapes m = mode_shapes(pol.theta, kappa);
    const Vec2 ul{amp * (k1 * m.g1 + k2 * m.g3), amp * (k1 * m.g2 + k2 * m.g4)};
    return frame.vec_to_global(ul);
  };
  f.displacement_gradient = [=](Vec2 p) {
    const auto pol = polar(p);
    const double r = pol.r, th = pol.theta;
    const double B = 1.0 / (2.0 * mu * std::sqrt(2.0 * M_PI));
    const ModeShapes m = mode_shapes(th, kappa);
    const double sr = std::sqrt(r);
    const double u1_r = B * (k1 * m.g1 + k2 * m.g3) / (2.0 * sr);
    const double u2_r = B * (k1 * m.g2 + k2 * m.g4) / (2.0 * sr);
    const double u1_t = B * (k1 * m.d1 + k2 * m.d3) * sr;
    const double u2_t = B * (k1 * m.d2 + k2 * m.d4) * sr;
    const double ct = std::cos(th), st = std::sin(th);
    Eigen::Matrix2d gl;  // local frame: du_i/dx_j
    gl(0, 0) = u1_r * ct - u1_t * st / r;
    gl(0, 1) = u1_r * st + u1_t * ct / r;
    gl(1, 0) = u2_r * ct - u2_t * st / r;
    gl(1, 1) = u2_r * st + u2_t * ct / r;
    Eigen::Matrix2d R;
    R << frame.c, -frame.s, frame.s, frame.c;
    return Eigen::Matrix2d{R * gl * R.transpose()};
  };
  return f;
}

SifPair exact_inclined_sifs(double sigma, double a, double beta) {
  if (a <= 0.0) throw std::invalid_argument("exact_inclined_sifs: a > 0");
  const double k = sigma * std::sqrt(M_PI * a);
  return {k * std::cos(beta) * std::cos(beta),
          k * std::cos(beta) * std::sin(beta)};
}

}  // namespace dfem
