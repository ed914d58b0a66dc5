#pragma once

#include "slicereg/geometry.hpp"
#include "slicereg/volume.hpp"

namespace slicereg {

struct SampleGrad {
  double value = 0.0;
  Vec3 grad;  // d value / d p, in 1/voxel units
};

namespace detail {

// 8-corner trilinear blend at centered coordinate p. Corners outside the
// volume contribute value 0, which keeps the blend continuous and makes the
// sample total on all of R^3. Cell selection uses floor(), so derivatives at
// cell boundaries are the one-sided derivative of the containing cell.
template <class T>
SampleGrad trilinear_impl(const Dims3& dims, const T* data, const Vec3& p) {
  const double qx = p.x + center_offset(dims.nx);
  const double qy = p.y + center_offset(dims.ny);
  const double qz = p.z + center_offset(dims.nz);

  const double fx = std::floor(qx), fy = std::floor(qy), fz = std::floor(qz);
  const int ix = static_cast<int>(fx), iy = static_cast<int>(fy), iz = static_cast<int>(fz);
  const double tx = qx - fx, ty = qy - fy, tz = qz - fz;

  auto fetch = [&](int x, int y, int z) -> double {
    if (x < 0 || y < 0 || z < 0 || x >= dims.nx || y >= dims.ny || z >= dims.nz) return 0.0;
    return static_cast<double>(data[static_cast<std::size_t>(x) +
                                    static_cast<std::size_t>(dims.nx) *
                                        (static_cast<std::size_t>(y) +
                                         static_cast<std::size_t>(dims.ny) * z)]);
  };

  const double c000 = fetch(ix, iy, iz), c100 = fetch(ix + 1, iy, iz);
  const double c010 = fetch(ix, iy + 1, iz), c110 = fetch(ix + 1, iy + 1, iz);
  const double c001 = fetch(ix, iy, iz + 1), c101 = fetch(ix + 1, iy, iz + 1);
  const double c011 = fetch(ix, iy + 1, iz + 1), c111 = fetch(ix + 1, iy + 1, iz + 1);

  const double c00 = c000 + tx * (c100 - c000);
  const double c10 = c010 + tx * (c110 - c010);
  const double c01 = c001 + tx * (c101 - c001);
  const double c11 = c011 + tx * (c111 - c011);

  const double c0 = c00 + ty * (c10 - c00);
  const double c1 = c01 + ty * (c11 - c01);

  SampleGrad out;
  out.value = c0 + tz * (c1 - c0);

  const double dx0 = (c100 - c000) + ty * ((c110 - c010) - (c100 - c000));
  const double dx1 = (c101 - c001) + ty * ((c111 - c011) - (c101 - c001));
  out.grad.x = dx0 + tz * (dx1 - dx0);
  out.grad.y = (c10 - c00) + tz * ((c11 - c01) - (c10 - c00));
  out.grad.z = c1 - c0;
  return out;
}

}  // namespace detail

/// Trilinear sample at centered CT coordinate p; 0 outside the volume.
inline double trilinear_sample(const ScalarVolume& vol, const Vec3& p) {
  return detail::trilinear_impl(vol.dims, vol.data.data(), p).value;
}
inline double trilinear_sample(const BinaryVolume& vol, const Vec3& p) {
  return detail::trilinear_impl(vol.dims, vol.data.data(), p).value;
}

/// Sample plus the exact derivative of the trilinear blend at p.
inline SampleGrad trilinear_sample_gradient(const ScalarVolume& vol, const Vec3& p) {
  return detail::trilinear_impl(vol.dims, vol.data.data(), p);
}
inline SampleGrad trilinear_sample_gradient(const BinaryVolume& vol, const Vec3& p) {
  return detail::trilinear_impl(vol.dims, vol.data.data(), p);
}

}  // namespace slicereg
