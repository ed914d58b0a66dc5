#include "slicereg/intersection.hpp"

#include <algorithm>

#include "slicereg/errors.hpp"

namespace slicereg {

IntersectionClass classify_flags(const std::vector<bool>& flags) {
  int count = 0, first = -1, last = -1;
  for (int i = 0; i < static_cast<int>(flags.size()); ++i)
    if (flags[static_cast<std::size_t>(i)]) {
      ++count;
      if (first < 0) first = i;
      last = i;
    }
  if (count == 0) return IntersectionClass::NoIntersections;
  const bool contiguous = (last - first + 1) == count;
  if (contiguous && count <= 3) return IntersectionClass::AtMost3Adjacent;
  return IntersectionClass::More;
}

std::vector<Vec2> mask_sample_points(const Mask2& mask, int interior_step) {
  std::vector<Vec2> pts;
  const double cu = center_offset(mask.width), cv = center_offset(mask.height);
  auto value = [&](int x, int y) -> int {
    if (x < 0 || y < 0 || x >= mask.width || y >= mask.height) return 0;
    return mask.at(x, y);
  };
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x) {
      if (!mask.at(x, y)) continue;
      const bool contour = value(x - 1, y) == 0 || value(x + 1, y) == 0 ||
                           value(x, y - 1) == 0 || value(x, y + 1) == 0;
      if (contour || (x % interior_step == 0 && y % interior_step == 0))
        pts.push_back({x - cu, y - cv});
    }
  return pts;
}

IntersectionReport intersection_test_points(const std::vector<std::vector<Vec3>>& slice_points) {
  const std::size_t n = slice_points.size();
  if (n < 2) throw DataError("intersection_test: needs at least 2 slices");

  IntersectionReport report;
  report.intersecting.assign(n, false);

  auto test_side = [&](std::size_t i, std::size_t begin, std::size_t end, const char* side) {
    if (begin >= end) return false;
    std::vector<Vec3> generators;
    for (std::size_t j = begin; j < end; ++j)
      generators.insert(generators.end(), slice_points[j].begin(), slice_points[j].end());
    ConvexHull hull;
    try {
      hull = convex_hull_3d(generators);
    } catch (const DegenerateHullError&) {
      report.warnings.push_back("slice " + std::to_string(i) + ": degenerate " + side +
                                " hull, side skipped");
      return false;
    }
    for (const auto& p : slice_points[i])
      if (point_in_hull(p, hull)) return true;
    return false;
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (test_side(i, 0, i, "lower") || test_side(i, i + 1, n, "upper"))
      report.intersecting[i] = true;
  }
  report.classification = classify_flags(report.intersecting);
  return report;
}

IntersectionReport intersection_test(const MaskStack& stack,
                                     const std::vector<TransformParams>& per_slice,
                                     int interior_step) {
  if (per_slice.size() != stack.count())
    throw DataError("intersection_test: transform count does not match slice count");
  std::vector<std::vector<Vec3>> slice_points(stack.count());
  for (std::size_t k = 0; k < stack.count(); ++k) {
    const auto pts2 = mask_sample_points(stack.masks[k], interior_step);
    slice_points[k].reserve(pts2.size());
    for (const auto& c : pts2)
      slice_points[k].push_back(transform_point(c, per_slice[k], 0));
  }
  return intersection_test_points(slice_points);
}

std::string to_string(IntersectionClass c) {
  switch (c) {
    case IntersectionClass::NoIntersections: return "NoIntersections";
    case IntersectionClass::AtMost3Adjacent: return "AtMost3Adjacent";
    case IntersectionClass::More: return "More";
  }
  return "Unknown";
}

}  // namespace slicereg
