#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dfemlab/mesh.hpp"

namespace dfem {

/// Legacy ASCII unstructured-grid writer: POINTS, CELLS (type 5),
/// POINT_DATA with a displacement vector and a nodal stress tensor.
/// Formatting is fixed so identical inputs produce identical bytes.
void export_vtk(const Mesh& mesh, const std::vector<Vec2>& displacement,
                const std::vector<Eigen::Vector3d>& nodal_stress,
                const std::string& path);

}  // namespace dfem
