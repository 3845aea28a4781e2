#pragma once

#include <cstdint>

#include "dfemlab/mesh.hpp"

namespace dfem {

/// Quarter plate [0,L]^2 with a quarter hole of radius a removed, meshed
/// by a transfinite ring-to-square map with n nodes per direction and
/// radial grading toward the hole (grading > 1 refines the rim).
Mesh quarter_plate_hole_mesh(int n, double L, double a, double grading = 1.6);

/// Structured mesh translated so its center is at the origin.
Mesh centered_square_mesh(int intervals, double size, double distortion = 0.0,
                          std::uint64_t seed = 0);

/// Structured mesh on [0,w]x[0,h] shifted by (x0, y0).
Mesh shifted_rect_mesh(int nx, int ny, double w, double h, double x0, double y0);

/// Centered square with a conforming slit: nodes on y = 0, x < 0 are
/// duplicated so the crack faces can separate (intervals must be even).
Mesh centered_slit_mesh(int intervals, double size);

struct Hole {
  Vec2 center;
  double radius;
};

/// Removes every triangle whose centroid falls inside a hole and drops
/// unused nodes.
Mesh carve_holes(const Mesh& mesh, const std::vector<Hole>& holes);

}  // namespace dfem
