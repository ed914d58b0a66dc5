#include <doctest.h>

#include <cmath>
#include <random>

#include "slicereg/errors.hpp"
#include "slicereg/metrics.hpp"

using namespace slicereg;

namespace {

Mask2 random_mask(std::mt19937_64& rng, int w, int h, double p) {
  Mask2 m(w, h);
  std::bernoulli_distribution bit(p);
  for (auto& v : m.data) v = bit(rng) ? 1 : 0;
  return m;
}

std::vector<std::pair<int, int>> edge_pixels(const Mask2& m) {
  std::vector<std::pair<int, int>> out;
  auto value = [&](int x, int y) -> int {
    if (x < 0 || y < 0 || x >= m.width || y >= m.height) return 0;
    return m.at(x, y);
  };
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x)
      if (m.at(x, y) && (value(x - 1, y) == 0 || value(x + 1, y) == 0 || value(x, y - 1) == 0 ||
                         value(x, y + 1) == 0))
        out.emplace_back(x, y);
  return out;
}

}  // namespace

TEST_CASE("ipced is the mean pairwise distance scaled by the pixel size") {
  AnnotationSet a;
  a.pixel_size_mm = 0.25;
  a.pairs = {{{0, 0}, {3, 4}},    // distance 5
             {{1, 1}, {1, 1}},    // distance 0
             {{-2, 0}, {-2, 7}}}; // distance 7
  CHECK(ipced(a) == doctest::Approx(0.25 * (5.0 + 0.0 + 7.0) / 3.0).epsilon(1e-12));
  AnnotationSet empty;
  CHECK_THROWS_AS(ipced(empty), DataError);
}

TEST_CASE("seg_metrics pixel counts equal the per-pixel oracle exactly") {
  std::mt19937_64 rng(71);
  for (int it = 0; it < 50; ++it) {
    const Mask2 pred = random_mask(rng, 23, 17, 0.5);
    const Mask2 truth = random_mask(rng, 23, 17, 0.5);
    const SegMetricsReport r = seg_metrics(pred, truth, 1.0);
    std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < pred.data.size(); ++i) {
      if (pred.data[i] && truth.data[i]) ++tp;
      else if (!pred.data[i] && !truth.data[i]) ++tn;
      else if (pred.data[i]) ++fp;
      else ++fn;
    }
    CHECK(r.tp == tp);
    CHECK(r.tn == tn);
    CHECK(r.fp == fp);
    CHECK(r.fn == fn);
    const double n = static_cast<double>(pred.data.size());
    CHECK(r.accuracy == doctest::Approx(100.0 * (tp + tn) / n).epsilon(1e-12));
    if (tp + fp > 0)
      CHECK(r.precision == doctest::Approx(100.0 * tp / (tp + fp)).epsilon(1e-12));
    if (tp + fn > 0) CHECK(r.recall == doctest::Approx(100.0 * tp / (tp + fn)).epsilon(1e-12));
  }
}

TEST_CASE("seg_metrics edge distances equal brute force nearest-edge search") {
  std::mt19937_64 rng(72);
  for (int it = 0; it < 10; ++it) {
    // Blob-like masks: threshold a smoothed random field by majority vote.
    Mask2 pred = random_mask(rng, 19, 19, 0.5);
    Mask2 truth = random_mask(rng, 19, 19, 0.5);
    const double px = 0.37;
    const auto pe = edge_pixels(pred);
    const auto te = edge_pixels(truth);
    if (pe.empty() || te.empty()) continue;
    const SegMetricsReport r = seg_metrics(pred, truth, px);
    std::vector<double> dists;
    for (const auto& [x, y] : pe) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [tx, ty] : te)
        best = std::min(best, std::hypot(static_cast<double>(x - tx),
                                         static_cast<double>(y - ty)));
      dists.push_back(best * px);
    }
    double mean = 0.0;
    for (double d : dists) mean += d;
    mean /= static_cast<double>(dists.size());
    double var = 0.0;
    for (double d : dists) var += (d - mean) * (d - mean);
    var /= static_cast<double>(dists.size());
    CHECK(r.edge_distance_mean == doctest::Approx(mean).epsilon(1e-9));
    CHECK(r.edge_distance_std == doctest::Approx(std::sqrt(var)).epsilon(1e-9));
  }
}

TEST_CASE("seg_metrics identical masks give perfect scores and zero distance") {
  std::mt19937_64 rng(73);
  Mask2 m(15, 15);
  for (int y = 4; y <= 10; ++y)
    for (int x = 3; x <= 11; ++x) m.at(x, y) = 1;
  const SegMetricsReport r = seg_metrics(m, m, 2.0);
  CHECK(r.accuracy == doctest::Approx(100.0));
  CHECK(r.precision == doctest::Approx(100.0));
  CHECK(r.recall == doctest::Approx(100.0));
  CHECK(r.edge_distance_mean == doctest::Approx(0.0));
  CHECK(r.edge_distance_std == doctest::Approx(0.0));
  CHECK(r.fp == 0);
  CHECK(r.fn == 0);
}

TEST_CASE("seg_metrics guards 0/0 ratios with warnings") {
  Mask2 empty(8, 8);
  Mask2 full(8, 8, std::vector<std::uint8_t>(64, 1));
  // An edgeless truth mask leaves the edge distance undefined entirely.
  CHECK_THROWS_AS(seg_metrics(empty, empty, 1.0), DataError);
  // Empty prediction, nonempty truth: precision is 0/0 (guarded to 0 with a
  // warning), recall is a well-defined 0.
  const SegMetricsReport r2 = seg_metrics(empty, full, 1.0);
  CHECK(r2.precision == 0.0);
  CHECK(r2.recall == doctest::Approx(0.0));
  CHECK(r2.edge_distance_mean == 0.0);
  CHECK(r2.warnings.size() >= 2);  // precision guard + no prediction edges
}

TEST_CASE("seg_metrics rejects mismatched dimensions") {
  Mask2 a(8, 8), b(8, 9);
  CHECK_THROWS_AS(seg_metrics(a, b, 1.0), DataError);
}

TEST_CASE("aggregate_metrics computes mean and population std per column") {
  SegMetricsReport a, b, c;
  a.accuracy = 90.0; b.accuracy = 94.0; c.accuracy = 98.0;
  a.precision = 80.0; b.precision = 80.0; c.precision = 86.0;
  a.recall = 70.0; b.recall = 90.0; c.recall = 80.0;
  a.edge_distance_mean = 1.0; b.edge_distance_mean = 2.0; c.edge_distance_mean = 3.0;
  const AggregateMetrics agg = aggregate_metrics({a, b, c});
  CHECK(agg.accuracy_mean == doctest::Approx(94.0));
  CHECK(agg.accuracy_std == doctest::Approx(std::sqrt((16.0 + 0.0 + 16.0) / 3.0)));
  CHECK(agg.precision_mean == doctest::Approx(82.0));
  CHECK(agg.recall_mean == doctest::Approx(80.0));
  CHECK(agg.recall_std == doctest::Approx(std::sqrt((100.0 + 100.0 + 0.0) / 3.0)));
  CHECK(agg.edge_distance_mean == doctest::Approx(2.0));
  CHECK(agg.edge_distance_std == doctest::Approx(std::sqrt(2.0 / 3.0)));
}

TEST_CASE("AnnotationSet validation rejects non-finite points") {
  AnnotationSet a;
  a.pixel_size_mm = 1.0;
  a.pairs = {{{0, 0}, {1, 1}}};
  CHECK_NOTHROW(a.validate());
  a.pairs.push_back({{std::numeric_limits<double>::quiet_NaN(), 0}, {0, 0}});
  CHECK_THROWS_AS(a.validate(), DataError);
}
