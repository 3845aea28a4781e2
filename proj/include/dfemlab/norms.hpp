#pragma once

#include <utility>
#include <vector>

#include "dfemlab/assembly.hpp"
#include "dfemlab/fields.hpp"

namespace dfem {

struct NormReport {
  double r_d = 0.0;  // relative L2 displacement error
  double r_e = 0.0;  // relative energy norm error
  int dof_count = 0;
  int cg_iterations = 0;
};

/// Element-wise (subcell-wise on cut elements) integration of the two
/// relative error norms against a closed-form field.
NormReport l2_and_energy_norms(const Basis& basis, const EnrichedModel* enr,
                               const Material& material, const DofMap& dofmap,
                               const Eigen::VectorXd& d,
                               const AnalyticalField& exact, int degree = 8);

/// Least-squares slope of log(error) against log(abscissa).
double convergence_rate(const std::vector<std::pair<double, double>>& series);

enum class StressRecovery { direct, averaged };

struct NodalStressTable {
  std::vector<Eigen::Vector3d> stress;
  std::vector<char> fallback;  // direct recovery fell back at these nodes
};

/// Direct: the interpolant's stress evaluated at the node (valid at
/// non-degenerated nodes; others fall back to the averaged value).
/// Averaged: area-weighted patch average of element-centroid stress.
NodalStressTable recover_nodal_stress(const Basis& basis,
                                      const EnrichedModel* enr,
                                      const std::vector<NodePatch>& patches,
                                      const DofMap& dofmap,
                                      const Eigen::VectorXd& d,
                                      const Material& material,
                                      StressRecovery method);

}  // namespace dfem
