#include "dfemlab/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace dfem {

PcgResult pcg_solve(const SparseMatrix& matrix, const Eigen::VectorXd& rhs,
                    double tol, int max_iter) {
  const int n = matrix.rows();
  if (rhs.size() != n) throw std::invalid_argument("pcg_solve: size mismatch");
  if (max_iter < 0) max_iter = 20 * n;

  Eigen::VectorXd inv_diag = matrix.diagonal();
  for (int i = 0; i < n; ++i) {
    if (inv_diag[i] <= 0.0)
      throw std::runtime_error("pcg_solve: non-positive diagonal entry");
    inv_diag[i] = 1.0 / inv_diag[i];
  }

  PcgResult out;
  out.x = Eigen::VectorXd::Zero(n);
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) return out;

  Eigen::VectorXd r = rhs;
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  for (int it = 1; it <= max_iter; ++it) {
    const Eigen::VectorXd Ap = matrix.multiply(p);
    const double pAp = p.dot(Ap);
    if (pAp <= 0.0)
      throw std::runtime_error("pcg_solve: matrix not positive definite");
    const double alpha = rz / pAp;
    out.x += alpha * p;
    r -= alpha * Ap;
    out.iterations = it;
    out.relative_residual = r.norm() / rhs_norm;
    if (out.relative_residual <= tol) return out;
    z = inv_diag.cwiseProduct(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  throw std::runtime_error("pcg_solve: max iterations exceeded");
}

}  // namespace dfem
