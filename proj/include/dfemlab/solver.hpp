#pragma once

#include <Eigen/Dense>

#include "dfemlab/sparse.hpp"

namespace dfem {

struct PcgResult {
  Eigen::VectorXd x;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Jacobi-preconditioned conjugate gradients. Converges when
/// ||r|| / ||rhs|| <= tol. Throws on max_iter or loss of positive
/// definiteness.
PcgResult pcg_solve(const SparseMatrix& matrix, const Eigen::VectorXd& rhs,
                    double tol = 1e-10, int max_iter = -1);

}  // namespace dfem
