#include "dfemlab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dfem {

double Mesh::triangle_diameter(int e) const {
  const auto& t = triangles[e];
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    d = std::max(d, distance(nodes[t[i]], nodes[t[(i + 1) % 3]]));
  return d;
}

double Mesh::diameter() const {
  if (nodes.empty()) return 0.0;
  Vec2 lo = nodes.front(), hi = nodes.front();
  for (const Vec2& p : nodes) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  return (hi - lo).norm();
}

double Mesh::total_area() const {
  double a = 0.0;
  for (int e = 0; e < triangle_count(); ++e) a += triangle_area(e);
  return a;
}

void Mesh::finalize() {
  const int n = node_count();
  if (n < 3 || triangles.empty()) throw std::runtime_error("mesh: too small");

  Vec2 lo = nodes.front(), hi = nodes.front();
  for (const Vec2& p : nodes) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  const double bbox_area = std::max((hi.x - lo.x) * (hi.y - lo.y), 1e-300);

  std::set<std::array<int, 3>> seen;
  for (auto& t : triangles) {
    for (int v : t)
      if (v < 0 || v >= n) throw std::runtime_error("mesh: node index out of range");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw std::runtime_error("mesh: repeated vertex in triangle");
    double a2 = signed_area2(nodes[t[0]], nodes[t[1]], nodes[t[2]]);
    if (a2 < 0.0) {
      std::swap(t[1], t[2]);
      a2 = -a2;
    }
    if (0.5 * a2 < 1e-14 * bbox_area)
      throw std::runtime_error("mesh: degenerate (zero-area) triangle");
    std::array<int, 3> key = t;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) throw std::runtime_error("mesh: duplicate triangle");
  }

  // Boundary edges: edges referenced by exactly one triangle.
  std::map<std::pair<int, int>, std::pair<int, int>> count;  // -> (count, element)
  for (int e = 0; e < triangle_count(); ++e) {
    const auto& t = triangles[e];
    for (int i = 0; i < 3; ++i) {
      int a = t[i], b = t[(i + 1) % 3];
      auto key = std::minmax(a, b);
      auto it = count.find(key);
      if (it == count.end())
        count[key] = {1, e};
      else
        it->second.first++;
    }
  }
  boundary_edges.clear();
  for (int e = 0; e < triangle_count(); ++e) {
    const auto& t = triangles[e];
    for (int i = 0; i < 3; ++i) {
      int a = t[i], b = t[(i + 1) % 3];
      auto& c = count[std::minmax(a, b)];
      if (c.first == 1) {
        BoundaryEdge be;
        be.a = a;
        be.b = b;
        be.element = e;
        // triangle is CCW, so the outward normal is the edge direction
        // rotated clockwise
        Vec2 d = (nodes[b] - nodes[a]).normalized();
        be.normal = {d.y, -d.x};
        boundary_edges.push_back(be);
      } else if (c.first > 2) {
        throw std::runtime_error("mesh: edge shared by more than two triangles");
      }
    }
  }
}

int Mesh::find_element(Vec2 p, double tol) const {
  for (int e = 0; e < triangle_count(); ++e) {
    const auto& t = triangles[e];
    const double a2 = signed_area2(nodes[t[0]], nodes[t[1]], nodes[t[2]]);
    bool inside = true;
    for (int i = 0; i < 3 && inside; ++i) {
      const double s = signed_area2(nodes[t[i]], nodes[t[(i + 1) % 3]], p);
      if (s < -tol * a2) inside = false;
    }
    if (inside) return e;
  }
  return -1;
}

Mesh make_mesh(std::vector<Vec2> nodes, std::vector<std::array<int, 3>> triangles) {
  Mesh m;
  m.nodes = std::move(nodes);
  m.triangles = std::move(triangles);
  m.finalize();
  return m;
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("mesh: cannot open " + path);
  std::string tok;
  Mesh m;
  if (!(in >> tok) || tok != "$Nodes") throw std::runtime_error("mesh: expected $Nodes");
  int n = 0;
  if (!(in >> n) || n <= 0) throw std::runtime_error("mesh: bad node count");
  m.nodes.resize(n);
  for (int i = 0; i < n; ++i) {
    int id;
    double x, y;
    if (!(in >> id >> x >> y)) throw std::runtime_error("mesh: bad node line");
    if (id != i + 1) throw std::runtime_error("mesh: node ids must be 1-based contiguous");
    m.nodes[i] = {x, y};
  }
  if (!(in >> tok) || tok != "$Elements") throw std::runtime_error("mesh: expected $Elements");
  int ne = 0;
  if (!(in >> ne) || ne <= 0) throw std::runtime_error("mesh: bad element count");
  m.triangles.resize(ne);
  for (int i = 0; i < ne; ++i) {
    int id, a, b, c;
    if (!(in >> id >> a >> b >> c)) throw std::runtime_error("mesh: bad element line");
    if (id != i + 1) throw std::runtime_error("mesh: element ids must be 1-based contiguous");
    m.triangles[i] = {a - 1, b - 1, c - 1};
  }
  if (!(in >> tok) || tok != "$End") throw std::runtime_error("mesh: expected $End");
  m.finalize();
  return m;
}

void save_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("mesh: cannot write " + path);
  out.precision(17);
  out << "$Nodes\n" << mesh.node_count() << "\n";
  for (int i = 0; i < mesh.node_count(); ++i)
    out << i + 1 << " " << mesh.nodes[i].x << " " << mesh.nodes[i].y << "\n";
  out << "$Elements\n" << mesh.triangle_count() << "\n";
  for (int e = 0; e < mesh.triangle_count(); ++e) {
    const auto& t = mesh.triangles[e];
    out << e + 1 << " " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
  }
  out << "$End\n";
}

std::vector<NodePatch> build_patches(const Mesh& mesh) {
  std::vector<NodePatch> patches(mesh.node_count());
  for (int i = 0; i < mesh.node_count(); ++i) patches[i].node = i;
  for (int e = 0; e < mesh.triangle_count(); ++e)
    for (int v : mesh.triangles[e]) patches[v].elements.push_back(e);
  for (auto& p : patches) {
    std::sort(p.elements.begin(), p.elements.end());
    double total = 0.0;
    for (int e : p.elements) total += mesh.triangle_area(e);
    p.weights.resize(p.elements.size());
    for (std::size_t k = 0; k < p.elements.size(); ++k)
      p.weights[k] = mesh.triangle_area(p.elements[k]) / total;
  }
  return patches;
}

SupportSet support_set(const Mesh& mesh, const std::vector<NodePatch>& patches,
                       int element) {
  SupportSet s;
  s.element = element;
  for (int v : mesh.triangles[element])
    for (int e : patches[v].elements)
      for (int n : mesh.triangles[e]) s.nodes.push_back(n);
  std::sort(s.nodes.begin(), s.nodes.end());
  s.nodes.erase(std::unique(s.nodes.begin(), s.nodes.end()), s.nodes.end());
  return s;
}

Mesh generate_structured(int nx, int ny, double width, double height,
                         double distortion, std::uint64_t seed) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("generate_structured: nx, ny >= 1");
  if (distortion < 0.0 || distortion >= 0.5)
    throw std::invalid_argument("generate_structured: distortion in [0, 0.5)");
  const double hx = width / nx, hy = height / ny;
  Mesh m;
  m.nodes.reserve((nx + 1) * (ny + 1));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      Vec2 p{i * hx, j * hy};
      const bool interior = i > 0 && i < nx && j > 0 && j < ny;
      if (interior && distortion > 0.0) {
        p.x += distortion * hx * jitter(rng);
        p.y += distortion * hy * jitter(rng);
      }
      m.nodes.push_back(p);
    }
  }
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      // split along the (i+1,j)-(i,j+1) diagonal
      m.triangles.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
      m.triangles.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  m.finalize();
  for (int e = 0; e < m.triangle_count(); ++e)
    if (m.triangle_area(e) <= 0.0)
      throw std::runtime_error("generate_structured: distortion inverted a triangle");
  return m;
}

}  // namespace dfem
