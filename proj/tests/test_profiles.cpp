#include <doctest.h>

#include <cmath>
#include <random>

#include "slicereg/errors.hpp"
#include "slicereg/profiles.hpp"

using namespace slicereg;

namespace {

// Disk of radius r centered in a w x h mask.
Mask2 disk_mask(int w, int h, double r, double cx = 0.0, double cy = 0.0) {
  Mask2 m(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double u = x - 0.5 * (w - 1) - cx;
      const double v = y - 0.5 * (h - 1) - cy;
      if (u * u + v * v <= r * r) m.at(x, y) = 1;
    }
  return m;
}

// Ball of radius r centered in the volume, in voxel units.
BinaryVolume ball_volume(Dims3 dims, double r) {
  BinaryVolume m(dims, 1.0);
  for (int z = 0; z < dims.nz; ++z)
    for (int y = 0; y < dims.ny; ++y)
      for (int x = 0; x < dims.nx; ++x) {
        const double u = x - 0.5 * (dims.nx - 1);
        const double v = y - 0.5 * (dims.ny - 1);
        const double w = z - 0.5 * (dims.nz - 1);
        if (u * u + v * v + w * w <= r * r) m.at(x, y, z) = 1;
      }
  return m;
}

}  // namespace

TEST_CASE("photo_area_profile applies the sqrt-area formula per slice") {
  // Two slices with known pixel counts.
  Mask2 a(8, 8);
  for (int i = 0; i < 9; ++i) a.data[static_cast<std::size_t>(i)] = 1;  // area 9
  Mask2 b(8, 8);
  for (int i = 0; i < 16; ++i) b.data[static_cast<std::size_t>(i)] = 1;  // area 16
  MaskStack stack({a, b}, {2, 5});
  TransformParams p;
  p.scaling = 0.5;
  p.spacing = 4.0;
  p.offset_z = -3.0;
  p.per_slice_offsets.assign(2, {0, 0});
  const AreaProfile prof = photo_area_profile(stack, p);
  REQUIRE(prof.points.size() == 2);
  CHECK(prof.points[0].x == doctest::Approx(3.0 * 0.5));
  CHECK(prof.points[0].y == doctest::Approx(-3.0 + 4.0 * 2));
  CHECK(prof.points[1].x == doctest::Approx(4.0 * 0.5));
  CHECK(prof.points[1].y == doctest::Approx(-3.0 + 4.0 * 5));
}

TEST_CASE("ct_area_profile counts voxels per horizontal slice") {
  BinaryVolume m({4, 4, 3}, 1.0);
  m.at(0, 0, 0) = 1;
  m.at(1, 0, 0) = 1;
  m.at(2, 2, 0) = 1;
  m.at(3, 3, 0) = 1;  // z=0: 4 voxels
  m.at(1, 1, 2) = 1;  // z=2: 1 voxel
  const AreaProfile prof = ct_area_profile(m);
  REQUIRE(prof.points.size() == 3);
  CHECK(prof.points[0].x == doctest::Approx(2.0));
  CHECK(prof.points[0].y == doctest::Approx(0.0));
  CHECK(prof.points[1].x == doctest::Approx(0.0));
  CHECK(prof.points[1].y == doctest::Approx(1.0));
  CHECK(prof.points[2].x == doctest::Approx(1.0));
  CHECK(prof.points[2].y == doctest::Approx(2.0));
}

TEST_CASE("profile_cost equals the brute-force nearest-neighbor mean") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int it = 0; it < 50; ++it) {
    AreaProfile photo, ct;
    const int n = 3 + static_cast<int>(rng() % 8);
    const int m = 5 + static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i) photo.points.push_back({u(rng), u(rng)});
    for (int j = 0; j < m; ++j) ct.points.push_back({u(rng), u(rng)});
    double ref = 0.0;
    for (const auto& p : photo.points) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : ct.points) {
        const double dx = p.x - q.x, dy = p.y - q.y;
        best = std::min(best, dx * dx + dy * dy);
      }
      ref += best;
    }
    ref /= n;
    CHECK(profile_cost(photo, ct) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("fit_profile_params recovers scaling, spacing and offset_z on a clean ball") {
  // CT: ball of radius 20 in a 64-cube. Photos: 8 disk masks whose radii match
  // the ball's cross sections under scaling 0.5, spacing 4, offset_z -14.
  const Dims3 dims{64, 64, 64};
  const BinaryVolume ct = ball_volume(dims, 20.0);
  const double scaling = 0.5, spacing = 4.0, offset_z = -14.0;
  std::vector<Mask2> masks;
  std::vector<int> indices;
  for (int i = 0; i < 8; ++i) {
    const double z = offset_z + spacing * i;  // centered CT z
    const double rr = 20.0 * 20.0 - z * z;
    const double r_ct = rr > 0 ? std::sqrt(rr) : 0.0;
    masks.push_back(disk_mask(96, 96, r_ct / scaling));
    indices.push_back(i);
  }
  MaskStack stack(std::move(masks), std::move(indices));
  InitConfig cfg;
  const TransformParams fit = fit_profile_params(stack, ct, cfg);
  CHECK(fit.rotation_x == 0.0);
  CHECK(fit.rotation_y == 0.0);
  CHECK(fit.rotation_z == 0.0);
  CHECK(fit.scaling == doctest::Approx(scaling).epsilon(0.08));
  CHECK(fit.spacing == doctest::Approx(spacing).epsilon(0.08));
  CHECK(fit.offset_z == doctest::Approx(offset_z).epsilon(0.15));
  REQUIRE(fit.per_slice_offsets.size() == 8);
  for (const auto& o : fit.per_slice_offsets) {
    CHECK(o[0] == 0.0);
    CHECK(o[1] == 0.0);
  }
}

TEST_CASE("fit_profile_params runs exactly the configured iteration count") {
  const BinaryVolume ct = ball_volume({32, 32, 32}, 10.0);
  MaskStack stack({disk_mask(32, 32, 8.0), disk_mask(32, 32, 9.0)}, {0, 1});
  InitConfig cfg;
  cfg.iterations = 50;  // no stopping rule in the init fit
  CHECK_NOTHROW(fit_profile_params(stack, ct, cfg));
}

TEST_CASE("fit_profile_params throws DivergenceError under an unstable rate") {
  // The scaling gradient grows with scaling itself, so an oversized rate is an
  // exponential instability that must surface as a named divergence.
  const BinaryVolume ct = ball_volume({32, 32, 32}, 10.0);
  MaskStack stack({disk_mask(32, 32, 8.0), disk_mask(32, 32, 9.0)}, {0, 1});
  InitConfig cfg;
  cfg.lr_scaling = 1e3;
  CHECK_THROWS_AS(fit_profile_params(stack, ct, cfg), DivergenceError);
}

TEST_CASE("init_xy_offsets matches a direct center-of-mass computation") {
  const Dims3 dims{48, 48, 48};
  // Ball displaced in x by 5 voxels.
  BinaryVolume ct(dims, 1.0);
  for (int z = 0; z < dims.nz; ++z)
    for (int y = 0; y < dims.ny; ++y)
      for (int x = 0; x < dims.nx; ++x) {
        const double u = x - 0.5 * (dims.nx - 1) - 5.0;
        const double v = y - 0.5 * (dims.ny - 1);
        const double w = z - 0.5 * (dims.nz - 1);
        if (u * u + v * v + w * w <= 15.0 * 15.0) ct.at(x, y, z) = 1;
      }
  // One photo disk, itself displaced by (4, -6) photo pixels.
  MaskStack stack({disk_mask(64, 64, 10.0, 4.0, -6.0)}, {0});
  TransformParams p;
  p.scaling = 1.0;
  p.spacing = 4.0;
  p.offset_z = 0.0;
  p.per_slice_offsets.assign(1, {0, 0});
  const XYInitResult res = init_xy_offsets(stack, ct, p);
  CHECK(res.warnings.empty());
  // Photo COM maps through scaling; offset must bring scaled photo COM onto CT COM:
  //   offset = com_ct - scaling * com_photo.
  // CT slice z=0 (centered) COM is (5, 0); photo COM is (4, -6).
  CHECK(res.params.per_slice_offsets[0][0] == doctest::Approx(5.0 - 1.0 * 4.0).epsilon(0.02));
  CHECK(res.params.per_slice_offsets[0][1] == doctest::Approx(0.0 - 1.0 * -6.0).epsilon(0.02));
}

TEST_CASE("init_xy_offsets warns and keeps zeros for slices outside the CT support") {
  const BinaryVolume ct = ball_volume({32, 32, 32}, 8.0);
  MaskStack stack({disk_mask(32, 32, 5.0), disk_mask(32, 32, 5.0)}, {0, 1});
  TransformParams p;
  p.scaling = 1.0;
  p.spacing = 10.0;
  p.offset_z = 200.0;  // far outside
  p.per_slice_offsets.assign(2, {0, 0});
  const XYInitResult res = init_xy_offsets(stack, ct, p);
  CHECK(res.warnings.size() == 2);
  for (const auto& o : res.params.per_slice_offsets) {
    CHECK(o[0] == 0.0);
    CHECK(o[1] == 0.0);
  }
}
