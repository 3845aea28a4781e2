#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace dfem {

enum class PlaneState { plane_stress, plane_strain };

struct Material {
  double E = 1000.0;
  double nu = 0.3;
  PlaneState state = PlaneState::plane_stress;
  /// Reproduces a nonstandard published plane-stress kappa; off by default.
  bool legacy_plane_stress_kappa = false;

  void validate() const {
    if (E <= 0.0) throw std::invalid_argument("material: E > 0 required");
    if (nu < 0.0 || nu >= 0.5)
      throw std::invalid_argument("material: 0 <= nu < 0.5 required");
  }

  double mu() const { return E / (2.0 * (1.0 + nu)); }

  /// Kolosov constant.
  double kappa() const {
    if (state == PlaneState::plane_strain) return 3.0 - 4.0 * nu;
    if (legacy_plane_stress_kappa) return (1.0 - nu) / (3.0 + nu);
    return (3.0 - nu) / (1.0 + nu);
  }

  /// Effective modulus in K = E*/2 * I.
  double e_star() const {
    return state == PlaneState::plane_stress ? E : E / (1.0 - nu * nu);
  }

  /// 3x3 Voigt elasticity matrix (xx, yy, xy with engineering shear).
  Eigen::Matrix3d elasticity() const {
    Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
    if (state == PlaneState::plane_stress) {
      const double f = E / (1.0 - nu * nu);
      C(0, 0) = C(1, 1) = f;
      C(0, 1) = C(1, 0) = f * nu;
      C(2, 2) = f * (1.0 - nu) / 2.0;
    } else {
      const double f = E / ((1.0 + nu) * (1.0 - 2.0 * nu));
      C(0, 0) = C(1, 1) = f * (1.0 - nu);
      C(0, 1) = C(1, 0) = f * nu;
      C(2, 2) = f * (1.0 - 2.0 * nu) / 2.0;
    }
    return C;
  }
};

}  // namespace dfem
