#include "dfemlab/dofmap.hpp"

namespace dfem {

DofMap DofMap::standard(int node_count) {
  DofMap m;
  m.a_offset_.assign(node_count, -1);
  m.b_offset_.assign(node_count, -1);
  m.total_ = 2 * node_count;
  return m;
}

DofMap DofMap::with_enrichment(int node_count, const NodeEnrichment& enr) {
  DofMap m = standard(node_count);
  int next = 2 * node_count;
  for (int n = 0; n < node_count; ++n)
    if (enr.kind[n] == EnrichKind::heaviside) {
      m.a_offset_[n] = next;
      next += 2;
    }
  for (int n = 0; n < node_count; ++n)
    if (enr.kind[n] == EnrichKind::tip) {
      m.b_offset_[n] = next;
      next += 8;
    }
  m.total_ = next;
  return m;
}

}  // namespace dfem
