#pragma once

#include <string>
#include <vector>

#include "slicereg/geometry.hpp"
#include "slicereg/volume.hpp"

namespace slicereg {

/// Per-slice points [a, z] pairing the scaled square-root area with the slice
/// position along z.
struct AreaProfile {
  std::vector<Vec2> points;  // x = a-axis, y = z-axis
};

struct InitConfig {
  // The scaling gradient carries a sqrt(area) factor (tens of pixels), so its
  // rate sits well below the offset rate to keep the fit stable.
  double lr_scaling = 1e-5;
  double lr_offset_z = 1e-2;
  double lr_spacing = 1e-3;
  double momentum = 0.6;
  long iterations = 10000;
};

/// One point per photo slice: [sqrt(A_photo(i)) * scaling, offset_z + spacing*i],
/// with i the photograph index carried by the stack.
AreaProfile photo_area_profile(const MaskStack& stack, const TransformParams& params);

/// One point per horizontal CT slice j: [sqrt(A_CT(j)), j].
AreaProfile ct_area_profile(const BinaryVolume& mask);

/// Mean over photo points of the squared distance to the nearest CT point.
double profile_cost(const AreaProfile& photo, const AreaProfile& ct);

/// Momentum gradient descent on profile_cost over (scaling, offset_z, spacing),
/// nearest-neighbor correspondences refreshed every iteration and frozen within
/// each step's gradient. Rotations stay zero; per-slice offsets are resized to
/// the stack but left at zero. The fit runs in CT index-z, then shifts the
/// returned offset_z into centered coordinates. Runs exactly cfg.iterations
/// steps; throws DivergenceError naming the offending parameter.
TransformParams fit_profile_params(const MaskStack& stack, const BinaryVolume& ct_mask,
                                   const InitConfig& cfg);

struct XYInitResult {
  TransformParams params;
  std::vector<std::string> warnings;
};

/// Sets each slice's (offset_x, offset_y) so the photo segmentation's center
/// of mass lands on the center of mass of the nearest CT mask z-slice at
/// z = offset_z + spacing*i. Slices mapping outside the CT z-support, or onto
/// an empty slice, keep offsets (0,0) with a warning.
XYInitResult init_xy_offsets(const MaskStack& stack, const BinaryVolume& ct_mask,
                             const TransformParams& params);

/// Convenience: fit_profile_params followed by init_xy_offsets.
XYInitResult initialize_params(const MaskStack& stack, const BinaryVolume& ct_mask,
                               const InitConfig& cfg);

}  // namespace slicereg
