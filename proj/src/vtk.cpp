#include "dfemlab/vtk.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dfem {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

void export_vtk(const Mesh& mesh, const std::vector<Vec2>& displacement,
                const std::vector<Eigen::Vector3d>& nodal_stress,
                const std::string& path) {
  const std::size_t n = static_cast<std::size_t>(mesh.node_count());
  if (displacement.size() != n || nodal_stress.size() != n)
    throw std::invalid_argument("export_vtk: data size mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_vtk: cannot write " + path);

  out << "# vtk DataFile Version 3.0\n";
  out << "dfemlab fields\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << n << " double\n";
  for (const Vec2& p : mesh.nodes)
    out << num(p.x) << " " << num(p.y) << " 0\n";
  const int m = mesh.triangle_count();
  out << "CELLS " << m << " " << 4 * m << "\n";
  for (const auto& t : mesh.triangles)
    out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  out << "CELL_TYPES " << m << "\n";
  for (int e = 0; e < m; ++e) out << "5\n";
  out << "POINT_DATA " << n << "\n";
  out << "VECTORS displacement double\n";
  for (const Vec2& u : displacement)
    out << num(u.x) << " " << num(u.y) << " 0\n";
  out << "TENSORS stress double\n";
  for (const auto& s : nodal_stress) {
    out << num(s[0]) << " " << num(s[2]) << " 0\n";
    out << num(s[2]) << " " << num(s[1]) << " 0\n";
    out << "0 0 0\n";
  }
}

}  // namespace dfem
