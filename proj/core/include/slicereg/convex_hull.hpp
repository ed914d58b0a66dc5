#pragma once

#include <vector>

#include "slicereg/geometry.hpp"

namespace slicereg {

struct HalfSpace {
  Vec3 normal;     // unit outward normal
  double offset;   // n . p <= offset for hull points
};

struct ConvexHull {
  std::vector<HalfSpace> facets;
  double epsilon = 0.0;  // containment tolerance, 1e-9 * bbox diagonal
};

/// Quickhull over >= 4 non-coplanar points. Every input point satisfies
/// n.p <= offset + epsilon for all facets. Throws DegenerateHullError for
/// fewer than 4 points or (near-)coplanar input.
ConvexHull convex_hull_3d(const std::vector<Vec3>& points);

/// True iff p satisfies every facet within the hull's epsilon.
bool point_in_hull(const Vec3& p, const ConvexHull& hull);

}  // namespace slicereg
