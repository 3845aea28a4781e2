#pragma once

#include <Eigen/Dense>
#include <functional>

#include "dfemlab/crack.hpp"
#include "dfemlab/geometry.hpp"
#include "dfemlab/material.hpp"

namespace dfem {

/// Closed-form reference solution: displacement, Voigt stress
/// (sxx, syy, txy) and, when available, the displacement gradient.
struct AnalyticalField {
  std::function<Vec2(Vec2)> displacement;
  std::function<Eigen::Vector3d(Vec2)> stress;
  std::function<Eigen::Matrix2d(Vec2)> displacement_gradient;
};

struct SifPair {
  double k1 = 0.0;
  double k2 = 0.0;
};

/// Kirsch fields for an infinite plate with a traction-free hole of
/// radius a under remote tension along x. Throws inside the hole.
AnalyticalField exact_plate_hole(double a, double far_stress,
                                 const Material& material);

/// Cantilever with parabolic end shear; plane stress, I = W^3/12.
AnalyticalField exact_timoshenko(double P, double L, double W,
                                 const Material& material);

/// Mixed-mode near-tip fields in the global frame; also the auxiliary
/// field of the interaction integral. Throws at r = 0.
AnalyticalField exact_westergaard(double k1, double k2, const TipFrame& frame,
                                  const Material& material);

/// K_I = sigma sqrt(pi a) cos^2(beta), K_II = sigma sqrt(pi a) cos sin.
SifPair exact_inclined_sifs(double sigma, double a, double beta);

}  // namespace dfem
