#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace dfem {

/// Row-compressed symmetric sparse matrix (both triangles stored).
class SparseMatrix {
 public:
  int rows() const { return static_cast<int>(row_ptr_.size()) - 1; }
  std::size_t nonzeros() const { return values_.size(); }

  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd diagonal() const;
  /// max |K_ij - K_ji| / max |K_ij|.
  double symmetry_error() const;
  double coeff(int i, int j) const;
  Eigen::MatrixXd dense() const;

  /// Symmetric elimination of a prescribed dof: the RHS picks up
  /// -K(:,dof)*value, the row/column are zeroed, the diagonal set to 1.
  void eliminate_dof(int dof, double value, Eigen::VectorXd& rhs);

  /// Coordinate-format text dump (row col value per line), for debugging.
  void dump(const std::string& path) const;

  friend class TripletList;

 private:
  std::vector<int> row_ptr_, cols_;
  std::vector<double> values_;
};

/// Accumulates (i, j, v) entries; duplicates are summed in a fixed order,
/// so assembly results do not depend on insertion batching.
class TripletList {
 public:
  explicit TripletList(int n) : n_(n) {}
  void add(int i, int j, double v) { entries_.push_back({i, j, v}); }
  SparseMatrix compress() const;

 private:
  struct Entry {
    int i, j;
    double v;
  };
  int n_;
  std::vector<Entry> entries_;
};

}  // namespace dfem
