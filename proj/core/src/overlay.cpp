#include "slicereg/overlay.hpp"

#include <algorithm>
#include <cmath>

#include "slicereg/errors.hpp"
#include "slicereg/sampling.hpp"

namespace slicereg {

Image8 resample_slice(const ScalarVolume& vol, const ThetaDocument& theta, int slice_index) {
  if (theta.photo_width <= 0 || theta.photo_height <= 0)
    throw DataError("resample_slice: transform document lacks photo dimensions");
  int ordinal = -1;
  for (std::size_t k = 0; k < theta.slice_indices.size(); ++k)
    if (theta.slice_indices[k] == slice_index) ordinal = static_cast<int>(k);
  if (ordinal < 0)
    throw DataError("resample_slice: slice " + std::to_string(slice_index) +
                    " is not bound by the transform document");

  float lo = vol.data[0], hi = vol.data[0];
  for (float v : vol.data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double range = (hi > lo) ? static_cast<double>(hi) - lo : 1.0;

  Image8 img;
  img.width = theta.photo_width;
  img.height = theta.photo_height;
  img.data.resize(static_cast<std::size_t>(img.width) * img.height);
  const double cu = center_offset(img.width), cv = center_offset(img.height);
  for (int py = 0; py < img.height; ++py)
    for (int px = 0; px < img.width; ++px) {
      const Vec2 c{px - cu, py - cv};
      const Vec3 p = transform_point_indexed(c, theta.params, ordinal, slice_index);
      const double v = (trilinear_sample(vol, p) - lo) / range;
      img.at(px, py) =
          static_cast<std::uint8_t>(std::clamp(std::lround(v * 255.0), 0L, 255L));
    }
  return img;
}

ImageRGB8 render_overlay(const Image8& photo, const Image8& ct_slice) {
  if (photo.width != ct_slice.width || photo.height != ct_slice.height)
    throw DataError("render_overlay: image dimensions differ");
  ImageRGB8 out;
  out.width = photo.width;
  out.height = photo.height;
  out.data.resize(static_cast<std::size_t>(out.width) * out.height * 3);
  for (std::size_t i = 0; i < photo.data.size(); ++i) {
    out.data[3 * i + 0] = ct_slice.data[i];
    out.data[3 * i + 1] = photo.data[i];
    out.data[3 * i + 2] = ct_slice.data[i];
  }
  return out;
}

}  // namespace slicereg
