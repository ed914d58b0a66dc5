#pragma once

#include <filesystem>
#include <vector>

#include "slicereg/intersection.hpp"
#include "slicereg/metrics.hpp"
#include "slicereg/phantom.hpp"
#include "slicereg/registration.hpp"

namespace slicereg {

/// Annotation CSV: header `slice,photo_u,photo_v,ct_u,ct_v`, one pair per
/// row, positional pairing. pixel_size_mm is supplied by the caller.
void write_annotations(const std::filesystem::path& path, const AnnotationSet& annotations);
AnnotationSet read_annotations(const std::filesystem::path& path, double pixel_size_mm);

/// Landmark CSV: header `slice,photo_u,photo_v,ct_x,ct_y,ct_z` (centered
/// coordinates).
void write_landmarks(const std::filesystem::path& path, const std::vector<Landmark>& landmarks);
std::vector<Landmark> read_landmarks(const std::filesystem::path& path);

/// Optimizer trace export: header `iteration,cost`.
void write_trace_csv(const std::filesystem::path& path, const OptimTrace& trace);

/// Intersection report: header `slice,intersecting`, one row per slice, then
/// a `# classification: ...` comment line.
void write_intersection_csv(const std::filesystem::path& path, const IntersectionReport& report,
                            const std::vector<int>& slice_indices);

}  // namespace slicereg
