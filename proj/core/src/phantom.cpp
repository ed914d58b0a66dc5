#include "slicereg/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "slicereg/errors.hpp"

namespace slicereg {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct StarPolygon {
  std::vector<Vec2> vertices;  // 10 vertices, tips and valleys alternating

  static StarPolygon make(double outer, double inner) {
    StarPolygon s;
    for (int k = 0; k < 10; ++k) {
      const double r = (k % 2 == 0) ? outer : inner;
      const double a = 2.0 * kPi * k / 10.0;
      s.vertices.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return s;
  }

  bool contains(double x, double y) const {
    // Crossing-number test.
    bool inside = false;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const Vec2& a = vertices[i];
      const Vec2& b = vertices[j];
      if ((a.y > y) != (b.y > y)) {
        const double xint = (b.x - a.x) * (y - a.y) / (b.y - a.y) + a.x;
        if (x < xint) inside = !inside;
      }
    }
    return inside;
  }
};

struct SurfaceBumps {
  std::vector<Vec3> wave;      // plane-wave vectors over the direction sphere
  std::vector<double> phase;
  std::vector<double> amp;
  double clamp = 0.0;

  static SurfaceBumps make(const PhantomSpec& spec, std::mt19937_64& rng) {
    SurfaceBumps b;
    b.clamp = 1.5 * spec.bump_amplitude;
    std::normal_distribution<double> dir(0.0, spec.bump_frequency);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> am(0.5, 1.0);
    for (int j = 0; j < spec.bump_count; ++j) {
      b.wave.push_back({dir(rng), dir(rng), dir(rng)});
      b.phase.push_back(ph(rng));
      b.amp.push_back(am(rng) * spec.bump_amplitude);
    }
    return b;
  }

  double radial_factor(const Vec3& p) const {
    if (wave.empty()) return 1.0;
    const double r = p.norm();
    if (r < 1e-12) return 1.0;
    const Vec3 u = p * (1.0 / r);
    double s = 0.0;
    for (std::size_t j = 0; j < wave.size(); ++j)
      s += amp[j] * std::cos(u.dot(wave[j]) + phase[j]);
    return 1.0 + std::clamp(s, -clamp, clamp);
  }
};

struct Solid {
  const PhantomSpec& spec;
  StarPolygon star;
  SurfaceBumps bumps;

  bool inside_flesh(const Vec3& p) const {
    const double e = spec.exponent;
    const double v = std::pow(std::fabs(p.x / spec.semi_axes[0]), e) +
                     std::pow(std::fabs(p.y / spec.semi_axes[1]), e) +
                     std::pow(std::fabs(p.z / spec.semi_axes[2]), e);
    return std::pow(v, 1.0 / e) <= bumps.radial_factor(p);
  }

  bool inside_core(const Vec3& p) const {
    return std::fabs(p.z) <= spec.core_half_height && star.contains(p.x, p.y);
  }
};

}  // namespace

Phantom generate_phantom(const PhantomSpec& spec) {
  if (spec.truth.per_slice_offsets.size() != static_cast<std::size_t>(spec.slice_count))
    throw DataError("generate_phantom: truth offsets do not match slice_count");
  spec.truth.validate();

  std::mt19937_64 rng(spec.seed);
  const Solid solid{spec, StarPolygon::make(spec.core_outer_radius, spec.core_inner_radius),
                    spec.bump_amplitude > 0.0 && spec.bump_count > 0
                        ? SurfaceBumps::make(spec, rng)
                        : SurfaceBumps{}};

  Phantom out;
  out.truth = spec.truth;

  // Volume and ground-truth occupancy.
  out.volume = ScalarVolume(spec.dims, spec.voxel_size);
  out.occupancy = BinaryVolume(spec.dims, spec.voxel_size);
  const double cx = center_offset(spec.dims.nx), cy = center_offset(spec.dims.ny),
               cz = center_offset(spec.dims.nz);
  std::normal_distribution<double> noise(0.0, spec.intensity_noise_sigma);
  for (int z = 0; z < spec.dims.nz; ++z)
    for (int y = 0; y < spec.dims.ny; ++y)
      for (int x = 0; x < spec.dims.nx; ++x) {
        const Vec3 p{x - cx, y - cy, z - cz};
        double value = 0.0;
        if (solid.inside_flesh(p)) {
          out.occupancy.at(x, y, z) = 1;
          value = solid.inside_core(p) ? spec.core_intensity : spec.flesh_intensity;
        }
        if (spec.intensity_noise_sigma > 0.0) value += noise(rng);
        out.volume.at(x, y, z) = static_cast<float>(value);
      }

  // Per-slice effective rotations; jitter simulates imperfect parallel cuts.
  std::normal_distribution<double> jitter(0.0, spec.slice_jitter_rad);
  std::vector<Mat3> slice_rot(static_cast<std::size_t>(spec.slice_count));
  for (int k = 0; k < spec.slice_count; ++k) {
    double jx = 0.0, jy = 0.0;
    if (spec.slice_jitter_rad > 0.0) {
      jx = jitter(rng);
      jy = jitter(rng);
    }
    slice_rot[static_cast<std::size_t>(k)] = rotation_matrix(
        spec.truth.rotation_x + jx, spec.truth.rotation_y + jy, spec.truth.rotation_z);
  }

  // Photo masks: analytic sections of the solid.
  const double pu = center_offset(spec.photo_width), pv = center_offset(spec.photo_height);
  std::vector<int> empty_slices;
  std::vector<Mask2> masks;
  std::vector<int> indices;
  for (int k = 0; k < spec.slice_count; ++k) {
    Mask2 m(spec.photo_width, spec.photo_height);
    const auto& off = spec.truth.per_slice_offsets[static_cast<std::size_t>(k)];
    const double zk = spec.truth.offset_z + spec.truth.spacing * k;
    std::size_t area = 0;
    for (int py = 0; py < spec.photo_height; ++py)
      for (int px = 0; px < spec.photo_width; ++px) {
        const Vec3 w{off[0] + spec.truth.scaling * (px - pu),
                     off[1] + spec.truth.scaling * (py - pv), zk};
        if (solid.inside_flesh(slice_rot[static_cast<std::size_t>(k)] * w)) {
          m.at(px, py) = 1;
          ++area;
        }
      }
    if (area == 0) empty_slices.push_back(k);
    masks.push_back(std::move(m));
    indices.push_back(k);
  }
  if (!empty_slices.empty()) {
    std::string msg = "generate_phantom: slice plane misses the solid at indices";
    for (int i : empty_slices) msg += " " + std::to_string(i);
    throw DataError(msg);
  }
  out.stack = MaskStack(std::move(masks), std::move(indices));

  // Landmarks: star tips intersected with the center slice plane.
  const int ic = spec.slice_count / 2;
  const Mat3& rc = slice_rot[static_cast<std::size_t>(ic)];
  const auto& offc = spec.truth.per_slice_offsets[static_cast<std::size_t>(ic)];
  const double z_plane = spec.truth.offset_z + spec.truth.spacing * ic;
  for (int tip = 0; tip < 5; ++tip) {
    const double a = 2.0 * kPi * (2 * tip) / 10.0;
    const double tx = spec.core_outer_radius * std::cos(a);
    const double ty = spec.core_outer_radius * std::sin(a);
    // Solve R^T (tx,ty,t) |_z = z_plane for t along the vertical tip edge.
    const double m02 = rc.m[0][2], m12 = rc.m[1][2], m22 = rc.m[2][2];
    if (std::fabs(m22) < 1e-9) continue;
    const double t = (z_plane - (m02 * tx + m12 * ty)) / m22;
    if (std::fabs(t) > spec.core_half_height) continue;
    const Vec3 ct_pt{tx, ty, t};
    const Vec3 q = rc.transposed() * ct_pt;
    const Vec2 photo{(q.x - offc[0]) / spec.truth.scaling,
                     (q.y - offc[1]) / spec.truth.scaling};
    if (std::fabs(photo.x) > pu || std::fabs(photo.y) > pv) continue;
    out.landmarks.push_back({ic, photo, ct_pt});
  }

  return out;
}

MaskStack perturb_masks(const MaskStack& stack, double dilate_rate, double erode_rate,
                        int radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double footprint = 2.0 * radius + 1.0;
  const double p_dilate = dilate_rate >= 1.0 ? 1.0 : dilate_rate / footprint;
  const double p_erode = erode_rate >= 1.0 ? 1.0 : erode_rate / footprint;

  MaskStack out = stack;
  for (auto& mask : out.masks) {
    const Mask2 orig = mask;
    auto value = [&](int x, int y) -> int {
      if (x < 0 || y < 0 || x >= orig.width || y >= orig.height) return 0;
      return orig.at(x, y);
    };
    std::vector<std::pair<int, int>> dilate_seeds, erode_seeds;
    for (int y = 0; y < orig.height; ++y)
      for (int x = 0; x < orig.width; ++x) {
        if (!orig.at(x, y)) continue;
        const bool contour = value(x - 1, y) == 0 || value(x + 1, y) == 0 ||
                             value(x, y - 1) == 0 || value(x, y + 1) == 0;
        if (!contour) continue;
        if (unit(rng) < p_erode) erode_seeds.emplace_back(x, y);
        if (unit(rng) < p_dilate) dilate_seeds.emplace_back(x, y);
      }
    auto stamp = [&](const std::vector<std::pair<int, int>>& seeds, std::uint8_t v) {
      for (const auto& [sx, sy] : seeds)
        for (int dy = -radius; dy <= radius; ++dy)
          for (int dx = -radius; dx <= radius; ++dx) {
            if (dx * dx + dy * dy > radius * radius + radius) continue;  // round-ish disk
            const int x = sx + dx, y = sy + dy;
            if (x >= 0 && y >= 0 && x < mask.width && y < mask.height) mask.at(x, y) = v;
          }
    };
    stamp(erode_seeds, 0);
    stamp(dilate_seeds, 1);
  }
  return out;
}

namespace {

// Ordinal of a landmark's slice in the (possibly subset) stack, or -1.
int ordinal_of(const MaskStack& stack, int slice_index) {
  for (std::size_t k = 0; k < stack.slice_indices.size(); ++k)
    if (stack.slice_indices[k] == slice_index) return static_cast<int>(k);
  return -1;
}

}  // namespace

double landmark_error(const std::vector<Landmark>& landmarks, const TransformParams& recovered,
                      const MaskStack& stack) {
  const Mat3 rot =
      rotation_matrix(recovered.rotation_x, recovered.rotation_y, recovered.rotation_z);
  const Vec3 normal = rot.column(2);
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& lm : landmarks) {
    const int ordinal = ordinal_of(stack, lm.slice_index);
    if (ordinal < 0) continue;
    const Vec3 mapped = transform_point_indexed(lm.photo, recovered, ordinal, lm.slice_index);
    Vec3 e = mapped - lm.ct;
    e = e - normal * normal.dot(e);
    sum += e.norm();
    ++n;
  }
  if (n == 0) throw DataError("landmark_error: no landmark lies on a stack slice");
  return sum / static_cast<double>(n);
}

AnnotationSet project_landmarks(const std::vector<Landmark>& landmarks,
                                const TransformParams& recovered, const MaskStack& stack,
                                double voxel_size) {
  AnnotationSet ann;
  ann.pixel_size_mm = voxel_size * recovered.scaling;
  const Mat3 rot_t =
      rotation_matrix(recovered.rotation_x, recovered.rotation_y, recovered.rotation_z)
          .transposed();
  const double pu = center_offset(stack.width()), pv = center_offset(stack.height());
  for (const auto& lm : landmarks) {
    const int ordinal = ordinal_of(stack, lm.slice_index);
    if (ordinal < 0) continue;
    ann.slice = lm.slice_index;
    const auto& off = recovered.per_slice_offsets[static_cast<std::size_t>(ordinal)];
    const Vec3 q = rot_t * lm.ct;
    const Vec2 ct_px{(q.x - off[0]) / recovered.scaling + pu,
                     (q.y - off[1]) / recovered.scaling + pv};
    const Vec2 photo_px{lm.photo.x + pu, lm.photo.y + pv};
    ann.pairs.emplace_back(photo_px, ct_px);
  }
  if (ann.pairs.empty())
    throw DataError("project_landmarks: no landmark lies on a stack slice");
  return ann;
}

}  // namespace slicereg
