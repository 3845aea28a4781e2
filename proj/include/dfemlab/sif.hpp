#pragma once

#include <string>
#include <vector>

#include "dfemlab/assembly.hpp"
#include "dfemlab/fields.hpp"
#include "dfemlab/norms.hpp"
#include "dfemlab/solver.hpp"

namespace dfem {

/// Equivalent-domain support for the interaction integral: the ring of
/// elements where the plateau weight transitions from 1 to 0.
struct InteractionDomain {
  double radius = 0.0;
  std::vector<int> elements;  // elements with mixed nodal q
  std::vector<double> q;      // per node: 1 inside the disc, 0 outside
};

/// Throws when the disc touches the outer boundary or comes back onto an
/// earlier crack segment.
InteractionDomain make_interaction_domain(const Mesh& mesh,
                                          const CrackPath& crack,
                                          double radius);

/// Characteristic tip-element size times `factor`.
double default_sif_radius(const Mesh& mesh, const NodeEnrichment& enr,
                          double factor = 2.5);

SifPair interaction_integral_sifs(const Basis& basis, const EnrichedModel& enr,
                                  const Material& material,
                                  const DofMap& dofmap,
                                  const Eigen::VectorXd& d,
                                  const InteractionDomain& domain);

/// Maximum hoop stress kink angle, radians in the tip frame.
/// Throws when both factors vanish.
double hoop_stress_angle(SifPair sifs);

struct PropagationConfig {
  double increment = 0.1;
  int steps = 10;
  EnrichmentScheme scheme;
  Basis::Kind kind = Basis::Kind::dfem;
  QuadratureConfig quad;
  double sif_radius_factor = 2.5;
  double solver_tol = 1e-10;
  int solver_max_iter = -1;
};

struct PropagationStep {
  int step = 0;
  Vec2 tip;
  SifPair sifs;
  double theta_c = 0.0;
  int cg_iterations = 0;
};

struct PropagationOutcome {
  std::vector<PropagationStep> steps;
  CrackPath crack;
  std::string status;  // "completed", "tip-left-domain", "sif-failure"
};

/// Quasi-static growth loop: solve, extract SIFs, kink by the hoop-stress
/// angle, extend the polyline, reclassify. The load case is fixed.
PropagationOutcome propagate(const Mesh& mesh,
                             const std::vector<NodePatch>& patches,
                             const Material& material, const LoadCase& load,
                             CrackPath crack, const PropagationConfig& config);

}  // namespace dfem
