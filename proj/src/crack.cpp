#include "dfemlab/crack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dfem {

double CrackPath::tip_angle() const {
  const Vec2 d = vertices.back() - vertices[vertices.size() - 2];
  return std::atan2(d.y, d.x);
}

void CrackPath::validate() const {
  if (vertices.size() < 2) throw std::invalid_argument("crack: need >= 2 vertices");
  for (std::size_t i = 1; i < vertices.size(); ++i)
    if (distance(vertices[i], vertices[i - 1]) == 0.0)
      throw std::invalid_argument("crack: repeated consecutive vertices");
}

TipFrame tip_frame(const CrackPath& crack) {
  crack.validate();
  TipFrame f;
  f.origin = crack.tip();
  f.angle = crack.tip_angle();
  f.c = std::cos(f.angle);
  f.s = std::sin(f.angle);
  return f;
}

int heaviside(const CrackPath& crack, Vec2 p) {
  const auto& v = crack.vertices;
  const std::size_t ns = v.size() - 1;
  double best = std::numeric_limits<double>::max();
  std::size_t best_seg = 0;
  double best_t = 0.0;
  for (std::size_t i = 0; i < ns; ++i) {
    const Vec2 d = v[i + 1] - v[i];
    const double len2 = d.squared_norm();
    double t = len2 > 0.0 ? (p - v[i]).dot(d) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dist = (p - (v[i] + d * t)).norm();
    if (dist < best) {
      best = dist;
      best_seg = i;
      best_t = t;
    }
  }
  const Vec2 a = v[best_seg], b = v[best_seg + 1];
  Vec2 dir = (b - a).normalized();
  // at an interior junction the side is measured against the bisector of
  // the two adjacent segments
  if (best_t <= 0.0 && best_seg > 0)
    dir = (dir + (a - v[best_seg - 1]).normalized()).normalized();
  else if (best_t >= 1.0 && best_seg + 1 < ns)
    dir = (dir + (v[best_seg + 2] - b).normalized()).normalized();
  const Vec2 ref = a + (b - a) * best_t;
  const double side = dir.cross(p - ref);
  return side >= 0.0 ? 1 : -1;
}

BranchEval branch_functions(const TipFrame& frame, Vec2 p) {
  const auto pol = frame.polar(p);
  if (pol.r <= 0.0) throw std::domain_error("branch_functions: r = 0");
  const double r = pol.r, th = pol.theta;
  const double sr = std::sqrt(r);
  const double sh = std::sin(0.5 * th), ch = std::cos(0.5 * th);
  const double st = std::sin(th), ct = std::cos(th);

  BranchEval out;
  out.f = {sr * sh, sr * ch, sr * sh * st, sr * ch * st};
  const double fr[4] = {0.5 * sh / sr, 0.5 * ch / sr, 0.5 * sh * st / sr,
                        0.5 * ch * st / sr};
  const double fth[4] = {0.5 * sr * ch, -0.5 * sr * sh,
                         sr * (0.5 * ch * st + sh * ct),
                         sr * (-0.5 * sh * st + ch * ct)};
  for (int a = 0; a < 4; ++a) {
    const Vec2 local{fr[a] * ct - fth[a] * st / r, fr[a] * st + fth[a] * ct / r};
    out.grad[a] = frame.vec_to_global(local);
  }
  return out;
}

int NodeEnrichment::count(EnrichKind k) const {
  int n = 0;
  for (EnrichKind e : kind) n += e == k;
  return n;
}

namespace {

// Parametric interval of segment [a,b] inside the closed triangle, or
// empty (t0 > t1). Half-plane clipping against the three CCW edges.
bool clip_segment(const std::array<Vec2, 3>& tri, Vec2 a, Vec2 b, double tol,
                  double& t0, double& t1) {
  t0 = 0.0;
  t1 = 1.0;
  const Vec2 d = b - a;
  for (int i = 0; i < 3; ++i) {
    const Vec2 e0 = tri[i], e1 = tri[(i + 1) % 3];
    const Vec2 n = (e1 - e0).perp();  // inward normal (CCW triangle)
    const double denom = n.dot(d);
    const double num = n.dot(a - e0);
    if (std::abs(denom) < tol) {
      if (num < -tol) return false;  // parallel and outside
      continue;
    }
    const double t = -num / denom;
    if (denom > 0.0)
      t0 = std::max(t0, t);
    else
      t1 = std::min(t1, t);
    if (t0 > t1) return false;
  }
  return t0 <= t1;
}

bool strictly_inside(const std::array<Vec2, 3>& tri, Vec2 p, double rel = 1e-9) {
  const double a2 = signed_area2(tri[0], tri[1], tri[2]);
  for (int i = 0; i < 3; ++i)
    if (signed_area2(tri[i], tri[(i + 1) % 3], p) < rel * a2) return false;
  return true;
}

bool in_closure(const std::array<Vec2, 3>& tri, Vec2 p, double rel = 1e-12) {
  const double a2 = signed_area2(tri[0], tri[1], tri[2]);
  for (int i = 0; i < 3; ++i)
    if (signed_area2(tri[i], tri[(i + 1) % 3], p) < -rel * a2) return false;
  return true;
}

std::array<Vec2, 3> element_vertices(const Mesh& mesh, int e) {
  const auto& t = mesh.triangles[e];
  return {mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]};
}

// True if some piece of the polyline crosses the element interior with
// both ends on the element boundary (a full cut). The tip element is
// handled separately by the caller.
bool element_fully_cut(const Mesh& mesh, int e, const CrackPath& crack) {
  const auto tri = element_vertices(mesh, e);
  const double diam = mesh.triangle_diameter(e);
  const double tol = 1e-12 * diam;
  for (std::size_t i = 0; i + 1 < crack.vertices.size(); ++i) {
    const Vec2 a = crack.vertices[i], b = crack.vertices[i + 1];
    double t0, t1;
    if (!clip_segment(tri, a, b, tol, t0, t1)) continue;
    if ((t1 - t0) * distance(a, b) < 1e-9 * diam) continue;
    const Vec2 mid = a + (b - a) * (0.5 * (t0 + t1));
    if (strictly_inside(tri, mid)) return true;
  }
  return false;
}

int find_tip_element(const Mesh& mesh, const CrackPath& crack) {
  const Vec2 tip = crack.tip();
  const Vec2 prev = crack.vertices[crack.vertices.size() - 2];
  int fallback = -1;
  for (int e = 0; e < mesh.triangle_count(); ++e) {
    const auto tri = element_vertices(mesh, e);
    if (!in_closure(tri, tip)) continue;
    if (fallback < 0) fallback = e;
    // prefer the element whose interior carries the final segment
    double t0, t1;
    const double tol = 1e-12 * mesh.triangle_diameter(e);
    if (clip_segment(tri, prev, tip, tol, t0, t1) && t1 > t0) {
      const Vec2 mid = prev + (tip - prev) * (0.5 * (t0 + t1));
      if (strictly_inside(tri, mid)) return e;
    }
  }
  return fallback;
}

}  // namespace

NodeEnrichment classify_nodes(const Mesh& mesh, const CrackPath& crack,
                              EnrichmentScheme scheme) {
  crack.validate();
  NodeEnrichment out;
  out.scheme = scheme;
  out.kind.assign(mesh.node_count(), EnrichKind::none);
  out.element_cut.assign(mesh.triangle_count(), 0);
  out.tip_element = find_tip_element(mesh, crack);

  for (int e = 0; e < mesh.triangle_count(); ++e) {
    if (e == out.tip_element) continue;
    if (element_fully_cut(mesh, e, crack)) out.element_cut[e] = 1;
  }
  for (int e = 0; e < mesh.triangle_count(); ++e)
    if (out.element_cut[e])
      for (int v : mesh.triangles[e]) out.kind[v] = EnrichKind::heaviside;

  if (out.tip_element >= 0) {
    for (int v : mesh.triangles[out.tip_element]) out.kind[v] = EnrichKind::tip;
    if (scheme.mode == EnrichmentScheme::Mode::fixed_area) {
      if (scheme.radius <= 0.0)
        throw std::invalid_argument("classify_nodes: fixed-area radius > 0");
      const Vec2 tip = crack.tip();
      for (int n = 0; n < mesh.node_count(); ++n)
        if (distance(mesh.nodes[n], tip) <= scheme.radius)
          out.kind[n] = EnrichKind::tip;
    }
  }
  return out;
}

namespace {

using Tri = std::array<Vec2, 3>;

void split_convex_by_line(const std::vector<Vec2>& poly, Vec2 p0, Vec2 dir,
                          double tol, std::vector<Vec2>& plus,
                          std::vector<Vec2>& minus) {
  const int n = static_cast<int>(poly.size());
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) {
    s[i] = dir.cross(poly[i] - p0);
    if (std::abs(s[i]) < tol) s[i] = 0.0;  // snap to the line
  }
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    if (s[i] >= 0.0) plus.push_back(poly[i]);
    if (s[i] <= 0.0) minus.push_back(poly[i]);
    if (s[i] * s[j] < 0.0) {
      const double t = s[i] / (s[i] - s[j]);
      const Vec2 x = poly[i] + (poly[j] - poly[i]) * t;
      plus.push_back(x);
      minus.push_back(x);
    }
  }
}

void fan_polygon(const std::vector<Vec2>& poly, double min_area,
                 std::vector<Tri>& out) {
  for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
    Tri t{poly[0], poly[i], poly[i + 1]};
    if (0.5 * std::abs(signed_area2(t[0], t[1], t[2])) > min_area)
      out.push_back(t);
  }
}

void fan_around_point(const Tri& t, Vec2 p, double tol, double min_area,
                      std::vector<Tri>& out) {
  for (int i = 0; i < 3; ++i)
    if (distance(t[i], p) < tol) {
      out.push_back(t);  // already a vertex
      return;
    }
  for (int i = 0; i < 3; ++i) {
    Tri sub{p, t[i], t[(i + 1) % 3]};
    if (0.5 * std::abs(signed_area2(sub[0], sub[1], sub[2])) > min_area)
      out.push_back(sub);
  }
}

}  // namespace

std::vector<std::array<Vec2, 3>> subdivide_cut_element(const Mesh& mesh,
                                                       int element,
                                                       const CrackPath& crack) {
  const Tri tri = element_vertices(mesh, element);
  const double diam = mesh.triangle_diameter(element);
  const double tol = 1e-12 * diam;
  const double parent_area = mesh.triangle_area(element);
  const double min_area = 1e-12 * parent_area;

  std::vector<Tri> cells{tri};
  for (std::size_t i = 0; i + 1 < crack.vertices.size(); ++i) {
    const Vec2 a = crack.vertices[i], b = crack.vertices[i + 1];
    double t0, t1;
    if (!clip_segment(tri, a, b, tol, t0, t1)) continue;
    const Vec2 dir = (b - a).normalized();
    std::vector<Tri> next;
    for (const Tri& c : cells) {
      double u0, u1;
      // split only cells the segment's line actually matters for
      if (!clip_segment(c, a - dir * (2.0 * diam), b + dir * (2.0 * diam), tol,
                        u0, u1)) {
        next.push_back(c);
        continue;
      }
      std::vector<Vec2> plus, minus;
      split_convex_by_line({c[0], c[1], c[2]}, a, dir, tol, plus, minus);
      if (plus.size() < 3 || minus.size() < 3) {
        next.push_back(c);
        continue;
      }
      fan_polygon(plus, min_area, next);
      fan_polygon(minus, min_area, next);
    }
    cells.swap(next);
  }

  const Vec2 tip = crack.tip();
  if (in_closure(tri, tip, 1e-12)) {
    std::vector<Tri> fanned;
    for (const Tri& c : cells) {
      if (in_closure(c, tip, 1e-9))
        fan_around_point(c, tip, tol, min_area, fanned);
      else
        fanned.push_back(c);
    }
    cells.swap(fanned);
  }
  if (cells.empty()) cells.push_back(tri);
  return cells;
}

DegenerationSet degeneration_from_enrichment(const NodeEnrichment& enrichment,
                                             const Mesh& mesh,
                                             const CrackPath& crack) {
  (void)crack;
  DegenerationSet d = DegenerationSet::none(mesh.node_count());
  for (int n = 0; n < mesh.node_count(); ++n)
    if (enrichment.kind[n] != EnrichKind::none) d.flags[n] = 1;
  for (int e = 0; e < mesh.triangle_count(); ++e)
    if (enrichment.element_cut[e] || e == enrichment.tip_element)
      for (int v : mesh.triangles[e]) d.flags[v] = 1;
  return d;
}

}  // namespace dfem
