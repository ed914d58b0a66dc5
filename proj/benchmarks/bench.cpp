#include <benchmark/benchmark.h>

#include <random>

#include "slicereg/convex_hull.hpp"
#include "slicereg/phantom.hpp"
#include "slicereg/registration.hpp"
#include "slicereg/sampling.hpp"
#include "slicereg/segmentation.hpp"

using namespace slicereg;

namespace {

const Phantom& fixture() {
  static const Phantom ph = [] {
    PhantomSpec spec;
    spec.dims = {64, 64, 64};
    spec.semi_axes = {20.0, 16.0, 11.0};
    spec.core_outer_radius = 7.0;
    spec.core_inner_radius = 3.0;
    spec.core_half_height = 8.0;
    spec.slice_count = 6;
    spec.photo_width = 64;
    spec.photo_height = 64;
    spec.truth.spacing = 3.0;
    spec.truth.offset_z = -7.5;
    spec.truth.per_slice_offsets.assign(6, {0.0, 0.0});
    return generate_phantom(spec);
  }();
  return ph;
}

void bm_trilinear_sample(benchmark::State& state) {
  const Phantom& ph = fixture();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-34.0, 34.0);
  std::vector<Vec3> pts(4096);
  for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(trilinear_sample(ph.volume, pts[i]));
    i = (i + 1) & 4095;
  }
}
BENCHMARK(bm_trilinear_sample);

void bm_mse_cost(benchmark::State& state) {
  const Phantom& ph = fixture();
  const int stride = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(mse_cost(ph.stack, ph.occupancy, ph.truth, stride));
}
BENCHMARK(bm_mse_cost)->Arg(1)->Arg(2)->Arg(4);

void bm_mse_cost_gradient(benchmark::State& state) {
  const Phantom& ph = fixture();
  const int stride = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(mse_cost_gradient(ph.stack, ph.occupancy, ph.truth, stride));
}
BENCHMARK(bm_mse_cost_gradient)->Arg(1)->Arg(2)->Arg(4);

void bm_convex_hull_3d(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<Vec3> pts(static_cast<std::size_t>(state.range(0)));
  for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(convex_hull_3d(pts));
}
BENCHMARK(bm_convex_hull_3d)->Arg(64)->Arg(512);

void bm_segment_ct(benchmark::State& state) {
  const Phantom& ph = fixture();
  const double t = otsu_threshold(ph.volume);
  for (auto _ : state) benchmark::DoNotOptimize(segment_ct(ph.volume, t, 1));
}
BENCHMARK(bm_segment_ct);

}  // namespace

BENCHMARK_MAIN();
