#include "dfemlab/basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace dfem {

int DegenerationSet::count() const {
  int n = 0;
  for (char f : flags) n += f != 0;
  return n;
}

AreaCoords area_coordinates(const std::array<Vec2, 3>& v, Vec2 p) {
  AreaCoords ac;
  for (int i = 0; i < 3; ++i) {
    const Vec2 vj = v[(i + 1) % 3], vk = v[(i + 2) % 3];
    ac.a[i] = vj.x * vk.y - vk.x * vj.y;
    ac.b[i] = vj.y - vk.y;
    ac.c[i] = vk.x - vj.x;
  }
  const double two_area = signed_area2(v[0], v[1], v[2]);
  ac.area = 0.5 * two_area;
  for (int i = 0; i < 3; ++i)
    ac.L[i] = (ac.a[i] + ac.b[i] * p.x + ac.c[i] * p.y) / two_area;
  for (int i = 0; i < 3; ++i)
    if (ac.L[i] < -1e-12 || ac.L[i] > 1.0 + 1e-12)
      throw std::domain_error("area_coordinates: point outside triangle");
  return ac;
}

AreaCoords area_coordinates(const Mesh& mesh, int element, Vec2 p) {
  const auto& t = mesh.triangles[element];
  return area_coordinates(
      {mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]}, p);
}

BasisTriplet basis_triplet(const AreaCoords& ac) {
  BasisTriplet out;
  const double inv2A = 1.0 / (2.0 * ac.area);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double Li = ac.L[i], Lj = ac.L[j], Lk = ac.L[k];
    const Vec2 gLi{ac.b[i] * inv2A, ac.c[i] * inv2A};
    const Vec2 gLj{ac.b[j] * inv2A, ac.c[j] * inv2A};
    const Vec2 gLk{ac.b[k] * inv2A, ac.c[k] * inv2A};

    out.phi[i] = Li + Li * Li * Lj + Li * Li * Lk - Li * Lj * Lj - Li * Lk * Lk;
    const double dp_i = 1.0 + 2.0 * Li * (Lj + Lk) - Lj * Lj - Lk * Lk;
    const double dp_j = Li * Li - 2.0 * Li * Lj;
    const double dp_k = Li * Li - 2.0 * Li * Lk;
    out.grad_phi[i] = gLi * dp_i + gLj * dp_j + gLk * dp_k;

    // g1 = Lk*Li^2 + Li*Lj*Lk/2, g2 = Li^2*Lj + Li*Lj*Lk/2
    const double g1 = Lk * Li * Li + 0.5 * Li * Lj * Lk;
    const double g2 = Li * Li * Lj + 0.5 * Li * Lj * Lk;
    const double dg1_i = 2.0 * Li * Lk + 0.5 * Lj * Lk;
    const double dg1_j = 0.5 * Li * Lk;
    const double dg1_k = Li * Li + 0.5 * Li * Lj;
    const double dg2_i = 2.0 * Li * Lj + 0.5 * Lj * Lk;
    const double dg2_j = Li * Li + 0.5 * Li * Lk;
    const double dg2_k = 0.5 * Li * Lj;
    const Vec2 grad_g1 = gLi * dg1_i + gLj * dg1_j + gLk * dg1_k;
    const Vec2 grad_g2 = gLi * dg2_i + gLj * dg2_j + gLk * dg2_k;

    out.psi[i] = -ac.c[j] * g1 + ac.c[k] * g2;
    out.grad_psi[i] = grad_g1 * -ac.c[j] + grad_g2 * ac.c[k];
    out.phit[i] = ac.b[j] * g1 - ac.b[k] * g2;
    out.grad_phit[i] = grad_g1 * ac.b[j] - grad_g2 * ac.b[k];
  }
  return out;
}

namespace {

// Constant gradient of the hat function of `node` inside `element`;
// zero if the node is not a vertex.
Vec2 hat_gradient(const Mesh& mesh, int element, int node) {
  const auto& t = mesh.triangles[element];
  for (int i = 0; i < 3; ++i) {
    if (t[i] == node) {
      const Vec2 vj = mesh.nodes[t[(i + 1) % 3]], vk = mesh.nodes[t[(i + 2) % 3]];
      const double two_area = 2.0 * mesh.triangle_area(element);
      return {(vj.y - vk.y) / two_area, (vk.x - vj.x) / two_area};
    }
  }
  return {0.0, 0.0};
}

}  // namespace

GradientRow averaged_gradient_row(const Mesh& mesh,
                                  const std::vector<NodePatch>& patches,
                                  const DegenerationSet& degeneration,
                                  int node, int host_element) {
  GradientRow row;
  if (degeneration.degenerated(node)) {
    for (int v : mesh.triangles[host_element]) {
      row.nodes.push_back(v);
      row.grads.push_back(hat_gradient(mesh, host_element, v));
    }
    return row;
  }
  const NodePatch& patch = patches[node];
  for (std::size_t k = 0; k < patch.elements.size(); ++k) {
    const int e = patch.elements[k];
    const double w = patch.weights[k];
    for (int v : mesh.triangles[e]) {
      auto it = std::find(row.nodes.begin(), row.nodes.end(), v);
      if (it == row.nodes.end()) {
        row.nodes.push_back(v);
        row.grads.push_back(hat_gradient(mesh, e, v) * w);
      } else {
        row.grads[it - row.nodes.begin()] += hat_gradient(mesh, e, v) * w;
      }
    }
  }
  return row;
}

Basis::Basis(const Mesh& mesh, const std::vector<NodePatch>& patches,
             DegenerationSet degeneration, Kind kind)
    : mesh_(&mesh), degeneration_(std::move(degeneration)), kind_(kind) {
  const int ne = mesh.triangle_count();
  support_.resize(ne);
  if (kind_ == Kind::t3) {
    for (int e = 0; e < ne; ++e) {
      const auto& t = mesh.triangles[e];
      support_[e] = {t[0], t[1], t[2]};
    }
    return;
  }
  rows_.resize(ne);
  for (int e = 0; e < ne; ++e) {
    support_[e] = support_set(mesh, patches, e).nodes;
    const auto& sup = support_[e];
    for (int v = 0; v < 3; ++v) {
      const GradientRow row = averaged_gradient_row(
          mesh, patches, degeneration_, mesh.triangles[e][v], e);
      auto& dense = rows_[e][v];
      dense.assign(sup.size(), Vec2{0.0, 0.0});
      for (std::size_t k = 0; k < row.nodes.size(); ++k) {
        auto it = std::lower_bound(sup.begin(), sup.end(), row.nodes[k]);
        dense[it - sup.begin()] = row.grads[k];
      }
    }
  }
}

const std::vector<int>& Basis::support(int element) const {
  return support_[element];
}

ShapeEval Basis::eval(int element, Vec2 p) const {
  const AreaCoords ac = area_coordinates(*mesh_, element, p);
  ShapeEval out;
  out.support = &support_[element];
  const int n = static_cast<int>(out.support->size());
  out.value.assign(n, 0.0);
  out.grad_x.assign(n, 0.0);
  out.grad_y.assign(n, 0.0);

  if (kind_ == Kind::t3) {
    const double inv2A = 1.0 / (2.0 * ac.area);
    for (int i = 0; i < 3; ++i) {
      out.value[i] = ac.L[i];
      out.grad_x[i] = ac.b[i] * inv2A;
      out.grad_y[i] = ac.c[i] * inv2A;
    }
    return out;
  }

  const BasisTriplet bt = basis_triplet(ac);
  const auto& tri = mesh_->triangles[element];
  const auto& sup = *out.support;
  for (int v = 0; v < 3; ++v) {
    // delta part: N_L(x_v) = 1 only for the vertex itself
    const int lv = static_cast<int>(
        std::lower_bound(sup.begin(), sup.end(), tri[v]) - sup.begin());
    out.value[lv] += bt.phi[v];
    out.grad_x[lv] += bt.grad_phi[v].x;
    out.grad_y[lv] += bt.grad_phi[v].y;
    // averaged-gradient part; the rows are constants of the element
    const auto& row = rows_[element][v];
    for (int l = 0; l < n; ++l) {
      const Vec2 g = row[l];
      if (g.x == 0.0 && g.y == 0.0) continue;
      out.value[l] += bt.psi[v] * g.x + bt.phit[v] * g.y;
      out.grad_x[l] += bt.grad_psi[v].x * g.x + bt.grad_phit[v].x * g.y;
      out.grad_y[l] += bt.grad_psi[v].y * g.x + bt.grad_phit[v].y * g.y;
    }
  }
  return out;
}

}  // namespace dfem
