#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slicereg/geometry.hpp"
#include "slicereg/volume.hpp"

namespace slicereg {

/// Manually annotated corresponding point pairs on a rendered photo/CT slice
/// pair, in the common rendered pixel frame.
struct AnnotationSet {
  int slice = 0;
  double pixel_size_mm = 1.0;
  std::vector<std::pair<Vec2, Vec2>> pairs;  // (photo point, ct point)

  void validate() const;
};

struct SegMetricsReport {
  double accuracy = 0.0;   // percent
  double precision = 0.0;  // percent
  double recall = 0.0;     // percent
  double edge_distance_mean = 0.0;  // mm
  double edge_distance_std = 0.0;   // mm
  std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
  std::vector<std::string> warnings;
};

struct AggregateMetrics {
  double accuracy_mean = 0.0, accuracy_std = 0.0;
  double precision_mean = 0.0, precision_std = 0.0;
  double recall_mean = 0.0, recall_std = 0.0;
  double edge_distance_mean = 0.0, edge_distance_std = 0.0;
};

/// In-plane core endpoint distance: mean pairwise Euclidean distance times the
/// pixel size, in mm. Throws DataError on an empty pair list.
double ipced(const AnnotationSet& annotations);

/// Pixel counting metrics plus the one-directional mean/std distance from the
/// prediction's edge pixels (1-pixels 4-adjacent to background, image border
/// counting as background) to the nearest truth edge pixel. 0/0 ratios are
/// guarded to 0 with a warning.
SegMetricsReport seg_metrics(const Mask2& pred, const Mask2& truth, double pixel_size_mm);

/// Per-metric mean and population standard deviation over the edge-distance
/// means and percentage columns.
AggregateMetrics aggregate_metrics(const std::vector<SegMetricsReport>& reports);

}  // namespace slicereg
