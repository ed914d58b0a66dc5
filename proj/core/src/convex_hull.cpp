#include "slicereg/convex_hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "slicereg/errors.hpp"

namespace slicereg {

namespace {

struct Face {
  int a, b, c;
  Vec3 n;      // unit outward normal
  double d;    // n . vertex
  bool alive = true;
};

Face make_face(int a, int b, int c, const std::vector<Vec3>& pts, const Vec3& interior) {
  Face f{a, b, c, {}, 0.0};
  Vec3 n = (pts[static_cast<std::size_t>(b)] - pts[static_cast<std::size_t>(a)])
               .cross(pts[static_cast<std::size_t>(c)] - pts[static_cast<std::size_t>(a)]);
  const double len = n.norm();
  if (len > 0.0) n = n * (1.0 / len);
  double d = n.dot(pts[static_cast<std::size_t>(a)]);
  if (n.dot(interior) > d) {  // flip so the interior is below the plane
    n = n * -1.0;
    d = -d;
    std::swap(f.b, f.c);
  }
  f.n = n;
  f.d = d;
  return f;
}

}  // namespace

ConvexHull convex_hull_3d(const std::vector<Vec3>& points) {
  const std::size_t n = points.size();
  if (n < 4) throw DegenerateHullError("convex_hull_3d: fewer than 4 points");

  Vec3 lo{points[0]}, hi{points[0]};
  for (const auto& p : points) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  const double diag = (hi - lo).norm();
  if (diag == 0.0) throw DegenerateHullError("convex_hull_3d: all points coincide");
  const double eps_build = 1e-10 * diag;

  // Initial simplex: farthest pair, then farthest from the line, then from the
  // plane.
  std::size_t i0 = 0, i1 = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = (points[i] - points[j]).dot(points[i] - points[j]);
      if (d > best) {
        best = d;
        i0 = i;
        i1 = j;
      }
    }
  if (best <= eps_build * eps_build)
    throw DegenerateHullError("convex_hull_3d: all points coincide");

  const Vec3 axis = points[i1] - points[i0];
  std::size_t i2 = 0;
  best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = axis.cross(points[i] - points[i0]).norm();
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (best <= eps_build) throw DegenerateHullError("convex_hull_3d: points are collinear");

  Vec3 plane_n = axis.cross(points[i2] - points[i0]);
  plane_n = plane_n * (1.0 / plane_n.norm());
  std::size_t i3 = 0;
  best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::fabs(plane_n.dot(points[i] - points[i0]));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (best <= eps_build) throw DegenerateHullError("convex_hull_3d: points are coplanar");

  const Vec3 interior = (points[i0] + points[i1] + points[i2] + points[i3]) * 0.25;
  const int a = static_cast<int>(i0), b = static_cast<int>(i1), c = static_cast<int>(i2),
            e = static_cast<int>(i3);

  std::vector<Face> faces{make_face(a, b, c, points, interior), make_face(a, b, e, points, interior),
                          make_face(a, c, e, points, interior), make_face(b, c, e, points, interior)};

  // Incremental insertion: points farthest above some face first would be the
  // classic quickhull order; a plain pass is sufficient at the point counts
  // used here.
  for (std::size_t i = 0; i < n; ++i) {
    if (i == i0 || i == i1 || i == i2 || i == i3) continue;
    const Vec3& p = points[i];

    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (faces[f].alive && faces[f].n.dot(p) > faces[f].d + eps_build) visible.push_back(f);
    if (visible.empty()) continue;

    // Horizon: directed edges of visible faces whose reverse is not visible.
    std::map<std::pair<int, int>, int> edge_count;
    for (std::size_t f : visible) {
      const Face& face = faces[f];
      const int vs[3][2] = {{face.a, face.b}, {face.b, face.c}, {face.c, face.a}};
      for (const auto& ev : vs) ++edge_count[{ev[0], ev[1]}];
    }
    std::vector<std::pair<int, int>> horizon;
    for (const auto& [edge, cnt] : edge_count) {
      (void)cnt;
      if (edge_count.find({edge.second, edge.first}) == edge_count.end()) horizon.push_back(edge);
    }
    for (std::size_t f : visible) faces[f].alive = false;
    for (const auto& [u, v] : horizon)
      faces.push_back(make_face(u, v, static_cast<int>(i), points, interior));
  }

  ConvexHull hull;
  hull.epsilon = 1e-9 * diag;
  for (const Face& f : faces)
    if (f.alive) hull.facets.push_back({f.n, f.d});
  return hull;
}

bool point_in_hull(const Vec3& p, const ConvexHull& hull) {
  for (const auto& f : hull.facets)
    if (f.normal.dot(p) > f.offset + hull.epsilon) return false;
  return true;
}

}  // namespace slicereg
