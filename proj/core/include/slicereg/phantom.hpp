#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "slicereg/geometry.hpp"
#include "slicereg/metrics.hpp"
#include "slicereg/volume.hpp"

namespace slicereg {

/// Synthetic apple stand-in: a superellipsoid flesh region with an embedded
/// star-prism core whose sharp tips serve as landmark endpoints, sliced into a
/// photo mask stack with a known ground-truth transform.
struct PhantomSpec {
  // Sized so a 10-slice stack at spacing ~4 covers the whole solid (apples
  // are sliced end to end) and masks stay inside a 128 px photo at scaling 0.8.
  std::array<double, 3> semi_axes{40.0, 33.0, 21.0};  // CT voxels
  double exponent = 2.5;
  Dims3 dims{128, 128, 128};
  double voxel_size = 0.1293;  // mm

  // Seeded smooth radial surface bumps (fruit are lumpy, and the lumps are
  // what makes the slice tilt observable: on an exact ellipsoid a tilted
  // stack is nearly indistinguishable from a translated parallel one).
  // The boundary radius is scaled by 1 + B(direction), where B sums
  // bump_count random plane waves of amplitude ~bump_amplitude, clamped to
  // +/-1.5*bump_amplitude so the poles stay inside the end slice planes.
  double bump_amplitude = 0.08;
  int bump_count = 8;
  double bump_frequency = 4.5;

  TransformParams truth;  // per_slice_offsets must match slice_count
  int slice_count = 10;
  int photo_width = 128;
  int photo_height = 128;

  double core_outer_radius = 14.0;  // star tip radius, CT voxels
  double core_inner_radius = 6.0;
  double core_half_height = 16.0;
  double flesh_intensity = 1.0;
  double core_intensity = 0.45;
  double intensity_noise_sigma = 0.0;

  double slice_jitter_rad = 0.0;  // per-slice tilt violating the parallel model

  std::uint64_t seed = 1;
};

/// One core-tip landmark: the tip position on a slice plane, in the photo's
/// centered pixel frame and in centered CT voxel coordinates.
struct Landmark {
  int slice_index = 0;
  Vec2 photo;
  Vec3 ct;
};

struct Phantom {
  ScalarVolume volume;
  BinaryVolume occupancy;  // ground-truth flesh occupancy
  MaskStack stack;
  std::vector<Landmark> landmarks;
  TransformParams truth;
};

/// Fully seeded generation. Photo masks are exact analytic sections of the
/// solid under the (per-slice jittered) ground-truth transform; landmarks pair
/// the star tips on the center slice between the photo and CT frames. Throws
/// DataError listing slice indices whose plane misses the solid.
Phantom generate_phantom(const PhantomSpec& spec);

/// Seeded boundary noise: every contour pixel of each mask independently
/// seeds an erosion or dilation disk of the given radius. Event probabilities
/// are normalized by the disk footprint so the expected edge displacement is
/// roughly rate*radius; rate >= 1 fires on every contour pixel.
MaskStack perturb_masks(const MaskStack& stack, double dilate_rate, double erode_rate,
                        int radius, std::uint64_t seed);

/// Mean in-plane distance (CT voxels) between the true CT landmark and the
/// recovered transform's mapping of the photo landmark, with the component
/// along the recovered slice normal projected out. Landmarks whose slice is
/// not in the stack are ignored; throws DataError if none remain.
double landmark_error(const std::vector<Landmark>& landmarks, const TransformParams& recovered,
                      const MaskStack& stack);

/// Annotation pairs in the rendered registered-slice pixel frame: the photo
/// landmark in photo pixels versus the true CT landmark pulled back through
/// the recovered transform. pixel_size_mm is voxel_size * recovered scaling.
AnnotationSet project_landmarks(const std::vector<Landmark>& landmarks,
                                const TransformParams& recovered, const MaskStack& stack,
                                double voxel_size);

}  // namespace slicereg
