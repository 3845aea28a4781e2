#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "dfemlab/solver.hpp"

using namespace dfem;

namespace {

SparseMatrix from_dense(const Eigen::MatrixXd& A) {
  TripletList t(static_cast<int>(A.rows()));
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      if (A(i, j) != 0.0) t.add(i, j, A(i, j));
  return t.compress();
}

}  // namespace

TEST_CASE("triplet duplicates are summed") {
  TripletList t(2);
  t.add(0, 0, 1.0);
  t.add(0, 0, 2.0);
  t.add(1, 1, 1.0);
  t.add(0, 1, 0.5);
  t.add(1, 0, 0.5);
  const SparseMatrix m = from_dense(Eigen::MatrixXd::Identity(2, 2));
  const SparseMatrix s = t.compress();
  CHECK(s.coeff(0, 0) == 3.0);
  CHECK(s.coeff(0, 1) == 0.5);
  CHECK(s.symmetry_error() == 0.0);
  (void)m;
}

TEST_CASE("pcg on the identity converges in one iteration") {
  const SparseMatrix I = from_dense(Eigen::MatrixXd::Identity(10, 10));
  Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(10, 1.0, 10.0);
  const PcgResult r = pcg_solve(I, b, 1e-12);
  CHECK(r.iterations == 1);
  CHECK((r.x - b).norm() < 1e-12);
}

TEST_CASE("jacobi preconditioner solves diagonal systems in one iteration") {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(8, 8);
  for (int i = 0; i < 8; ++i) D(i, i) = 1.0 + i * i;
  const SparseMatrix A = from_dense(D);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(8);
  const PcgResult r = pcg_solve(A, b, 1e-12);
  CHECK(r.iterations == 1);
  for (int i = 0; i < 8; ++i)
    CHECK(r.x[i] == doctest::Approx(1.0 / (1.0 + i * i)).epsilon(1e-12));
}

TEST_CASE("random SPD system matches the dense elimination oracle") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd M(50, 50);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) M(i, j) = g(rng);
  const Eigen::MatrixXd A = M * M.transpose() + 50.0 * Eigen::MatrixXd::Identity(50, 50);
  Eigen::VectorXd b(50);
  for (int i = 0; i < 50; ++i) b[i] = g(rng);
  const Eigen::VectorXd x_oracle = Eigen::FullPivLU<Eigen::MatrixXd>(A).solve(b);
  const PcgResult r = pcg_solve(from_dense(A), b, 1e-12, 10000);
  CHECK((r.x - x_oracle).norm() < 1e-8 * x_oracle.norm());
}

TEST_CASE("non-SPD input is reported") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(4, 4);
  A(2, 2) = -1.0;
  Eigen::VectorXd b = Eigen::VectorXd::Ones(4);
  CHECK_THROWS(pcg_solve(from_dense(A), b, 1e-12));
}

TEST_CASE("max_iter exceeded is reported") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd M(30, 30);
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 30; ++j) M(i, j) = g(rng);
  const Eigen::MatrixXd A =
      M * M.transpose() + 0.01 * Eigen::MatrixXd::Identity(30, 30);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(30);
  CHECK_THROWS(pcg_solve(from_dense(A), b, 1e-15, 2));
}

TEST_CASE("eliminate_dof keeps symmetry and prescribes the value") {
  Eigen::MatrixXd A(3, 3);
  A << 4, 1, 0.5, 1, 3, 0.25, 0.5, 0.25, 2;
  SparseMatrix s = from_dense(A);
  Eigen::VectorXd rhs = Eigen::VectorXd::Ones(3);
  s.eliminate_dof(1, 2.0, rhs);
  CHECK(s.coeff(1, 1) == 1.0);
  CHECK(s.coeff(0, 1) == 0.0);
  CHECK(s.coeff(1, 0) == 0.0);
  CHECK(rhs[1] == 2.0);
  CHECK(rhs[0] == doctest::Approx(1.0 - 2.0 * 1.0));
  CHECK(rhs[2] == doctest::Approx(1.0 - 2.0 * 0.25));
  CHECK(s.symmetry_error() == 0.0);
}
