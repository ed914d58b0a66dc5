#pragma once

#include <string>
#include <vector>

#include "slicereg/convex_hull.hpp"
#include "slicereg/geometry.hpp"
#include "slicereg/volume.hpp"

namespace slicereg {

enum class IntersectionClass { NoIntersections, AtMost3Adjacent, More };

struct IntersectionReport {
  std::vector<bool> intersecting;  // one flag per slice
  IntersectionClass classification = IntersectionClass::NoIntersections;
  std::vector<std::string> warnings;
};

/// Classification from the flags: NoIntersections iff all false;
/// AtMost3Adjacent iff the true flags are nonempty, contiguous and at most 3.
IntersectionClass classify_flags(const std::vector<bool>& flags);

/// Mask sample points in centered photo coordinates: all contour pixels
/// (1-pixels 4-adjacent to background) plus every interior_step-th interior
/// pixel on a regular grid.
std::vector<Vec2> mask_sample_points(const Mask2& mask, int interior_step);

/// Core test on already-transformed slice point clouds: slice i is flagged if
/// any of its points lies inside the convex hull of all points of slices below
/// it or of all slices above it. Degenerate neighbor hulls (coplanar, e.g. a
/// single neighbor slice) are skipped with a warning.
IntersectionReport intersection_test_points(const std::vector<std::vector<Vec3>>& slice_points);

/// Slice-intersection test of the separate-registration experiment. Each
/// transform binds its slice at ordinal 0 (the optimize_separate/split_joint
/// convention).
IntersectionReport intersection_test(const MaskStack& stack,
                                     const std::vector<TransformParams>& per_slice,
                                     int interior_step = 8);

std::string to_string(IntersectionClass c);

}  // namespace slicereg
