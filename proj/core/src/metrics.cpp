#include "slicereg/metrics.hpp"

#include <cmath>
#include <limits>

#include "slicereg/errors.hpp"

namespace slicereg {

void AnnotationSet::validate() const {
  if (pairs.empty()) throw DataError("AnnotationSet: no annotation pairs");
  if (!(pixel_size_mm > 0.0)) throw DataError("AnnotationSet: pixel_size_mm must be > 0");
  for (const auto& [a, b] : pairs)
    if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(b.x) || !std::isfinite(b.y))
      throw DataError("AnnotationSet: non-finite annotation point");
}

double ipced(const AnnotationSet& annotations) {
  annotations.validate();
  double sum = 0.0;
  for (const auto& [photo, ct] : annotations.pairs) {
    const double dx = photo.x - ct.x, dy = photo.y - ct.y;
    sum += std::sqrt(dx * dx + dy * dy);
  }
  return sum / static_cast<double>(annotations.pairs.size()) * annotations.pixel_size_mm;
}

namespace {

std::vector<std::pair<int, int>> edge_pixels(const Mask2& m) {
  std::vector<std::pair<int, int>> edges;
  auto value = [&](int x, int y) -> int {
    if (x < 0 || y < 0 || x >= m.width || y >= m.height) return 0;
    return m.at(x, y);
  };
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x)
      if (m.at(x, y) && (value(x - 1, y) == 0 || value(x + 1, y) == 0 || value(x, y - 1) == 0 ||
                         value(x, y + 1) == 0))
        edges.emplace_back(x, y);
  return edges;
}

}  // namespace

SegMetricsReport seg_metrics(const Mask2& pred, const Mask2& truth, double pixel_size_mm) {
  if (pred.width != truth.width || pred.height != truth.height)
    throw DataError("seg_metrics: mask dimensions differ");

  SegMetricsReport r;
  for (std::size_t i = 0; i < pred.data.size(); ++i) {
    const bool p = pred.data[i] != 0, t = truth.data[i] != 0;
    if (p && t)
      ++r.tp;
    else if (!p && !t)
      ++r.tn;
    else if (p && !t)
      ++r.fp;
    else
      ++r.fn;
  }
  const double total = static_cast<double>(r.tp + r.tn + r.fp + r.fn);
  r.accuracy = 100.0 * static_cast<double>(r.tp + r.tn) / total;
  if (r.tp + r.fp == 0) {
    r.precision = 0.0;
    r.warnings.push_back("precision undefined (no predicted positives); reported as 0");
  } else {
    r.precision = 100.0 * static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp);
  }
  if (r.tp + r.fn == 0) {
    r.recall = 0.0;
    r.warnings.push_back("recall undefined (no truth positives); reported as 0");
  } else {
    r.recall = 100.0 * static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn);
  }

  const auto pred_edges = edge_pixels(pred);
  const auto truth_edges = edge_pixels(truth);
  if (truth_edges.empty())
    throw DataError("seg_metrics: truth mask has no edge pixels; edge distance undefined");
  if (pred_edges.empty()) {
    r.edge_distance_mean = 0.0;
    r.edge_distance_std = 0.0;
    r.warnings.push_back("prediction has no edge pixels; edge distance reported as 0");
  } else {
    double sum = 0.0, sum2 = 0.0;
    for (const auto& [px, py] : pred_edges) {
      double best = std::numeric_limits<double>::max();
      for (const auto& [tx, ty] : truth_edges) {
        const double dx = px - tx, dy = py - ty;
        best = std::min(best, dx * dx + dy * dy);
      }
      const double d = std::sqrt(best) * pixel_size_mm;
      sum += d;
      sum2 += d * d;
    }
    const double n = static_cast<double>(pred_edges.size());
    r.edge_distance_mean = sum / n;
    r.edge_distance_std = std::sqrt(std::max(0.0, sum2 / n - (sum / n) * (sum / n)));
  }
  return r;
}

AggregateMetrics aggregate_metrics(const std::vector<SegMetricsReport>& reports) {
  if (reports.empty()) throw DataError("aggregate_metrics: empty report list");
  auto mean_std = [&](auto getter, double& mean, double& stdev) {
    double sum = 0.0;
    for (const auto& r : reports) sum += getter(r);
    mean = sum / static_cast<double>(reports.size());
    double var = 0.0;
    for (const auto& r : reports) {
      const double d = getter(r) - mean;
      var += d * d;
    }
    stdev = std::sqrt(var / static_cast<double>(reports.size()));
  };
  AggregateMetrics a;
  mean_std([](const SegMetricsReport& r) { return r.accuracy; }, a.accuracy_mean, a.accuracy_std);
  mean_std([](const SegMetricsReport& r) { return r.precision; }, a.precision_mean,
           a.precision_std);
  mean_std([](const SegMetricsReport& r) { return r.recall; }, a.recall_mean, a.recall_std);
  mean_std([](const SegMetricsReport& r) { return r.edge_distance_mean; }, a.edge_distance_mean,
           a.edge_distance_std);
  return a;
}

}  // namespace slicereg
