#pragma once

#include <vector>

#include "dfemlab/crack.hpp"

namespace dfem {

/// Global unknown layout: u-DOFs first (2 per node), then Heaviside a-DOFs
/// (2 per enriched node, ascending node index), then tip b-DOFs
/// (4 branches x 2 components per enriched node).
class DofMap {
 public:
  static DofMap standard(int node_count);
  static DofMap with_enrichment(int node_count, const NodeEnrichment& enr);

  int total() const { return total_; }
  int node_count() const { return static_cast<int>(a_offset_.size()); }
  int u(int node, int comp) const { return 2 * node + comp; }
  bool has_a(int node) const { return a_offset_[node] >= 0; }
  bool has_b(int node) const { return b_offset_[node] >= 0; }
  int a(int node, int comp) const { return a_offset_[node] + comp; }
  int b(int node, int branch, int comp) const {
    return b_offset_[node] + 2 * branch + comp;
  }

 private:
  int total_ = 0;
  std::vector<int> a_offset_, b_offset_;  // -1 when absent
};

}  // namespace dfem
