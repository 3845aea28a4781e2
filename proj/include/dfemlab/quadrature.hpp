#pragma once

#include <array>
#include <vector>

#include "dfemlab/geometry.hpp"

namespace dfem {

/// Symmetric triangle rule in barycentric coordinates; weights sum to 1,
/// so physical weights are w * area.
struct TriRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;
};

/// Smallest stocked rule with at least the requested degree of exactness.
const TriRule& tri_rule(int degree);

/// Gauss-Legendre rule mapped to [0,1]; weights sum to 1.
struct LineRule {
  std::vector<double> points;
  std::vector<double> weights;
  int degree = 0;
};

const LineRule& line_rule(int degree);

/// Duffy-type tensor rule for a triangle with a vertex singularity:
/// points cluster toward vertex `apex` (0..2) and the Jacobian cancels an
/// r^(-1/2) blow-up there. Returns barycentric points and weights (sum 1).
TriRule duffy_rule(int apex, int points_per_direction);

}  // namespace dfem
