#include "dfemlab/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace dfem {

Eigen::VectorXd SparseMatrix::multiply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(rows());
  for (int i = 0; i < rows(); ++i) {
    double acc = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      acc += values_[k] * x[cols_[k]];
    y[i] = acc;
  }
  return y;
}

Eigen::VectorXd SparseMatrix::diagonal() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(rows());
  for (int i = 0; i < rows(); ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      if (cols_[k] == i) d[i] = values_[k];
  return d;
}

double SparseMatrix::coeff(int i, int j) const {
  for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
    if (cols_[k] == j) return values_[k];
  return 0.0;
}

double SparseMatrix::symmetry_error() const {
  double max_diff = 0.0, max_val = 0.0;
  for (int i = 0; i < rows(); ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      max_val = std::max(max_val, std::abs(values_[k]));
      max_diff = std::max(max_diff, std::abs(values_[k] - coeff(cols_[k], i)));
    }
  return max_val > 0.0 ? max_diff / max_val : 0.0;
}

Eigen::MatrixXd SparseMatrix::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows(), rows());
  for (int i = 0; i < rows(); ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      m(i, cols_[k]) = values_[k];
  return m;
}

void SparseMatrix::eliminate_dof(int dof, double value, Eigen::VectorXd& rhs) {
  // column sweep via the symmetric row
  for (int k = row_ptr_[dof]; k < row_ptr_[dof + 1]; ++k) {
    const int j = cols_[k];
    if (j == dof) continue;
    rhs[j] -= coeff(j, dof) * value;
    // zero the (j, dof) entry
    for (int m = row_ptr_[j]; m < row_ptr_[j + 1]; ++m)
      if (cols_[m] == dof) values_[m] = 0.0;
  }
  for (int k = row_ptr_[dof]; k < row_ptr_[dof + 1]; ++k)
    values_[k] = cols_[k] == dof ? 1.0 : 0.0;
  rhs[dof] = value;
}

void SparseMatrix::dump(const std::string& path) const {
  std::ofstream out(path);
  out.precision(17);
  for (int i = 0; i < rows(); ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      out << i << " " << cols_[k] << " " << values_[k] << "\n";
}

SparseMatrix TripletList::compress() const {
  std::vector<std::size_t> order(entries_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (entries_[a].i != entries_[b].i) return entries_[a].i < entries_[b].i;
    return entries_[a].j < entries_[b].j;
  });
  SparseMatrix m;
  m.row_ptr_.assign(n_ + 1, 0);
  int last_i = -1, last_j = -1;
  for (std::size_t idx : order) {
    const Entry& e = entries_[idx];
    if (e.i == last_i && e.j == last_j) {
      m.values_.back() += e.v;
    } else {
      m.cols_.push_back(e.j);
      m.values_.push_back(e.v);
      m.row_ptr_[e.i + 1]++;
      last_i = e.i;
      last_j = e.j;
    }
  }
  for (int i = 0; i < n_; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
  return m;
}

}  // namespace dfem
