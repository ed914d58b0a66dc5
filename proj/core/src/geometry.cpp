#include "slicereg/geometry.hpp"

#include <stdexcept>

#include "slicereg/errors.hpp"

namespace slicereg {

namespace {

Mat3 rot_x(double a) {
  Mat3 r = Mat3::identity();
  const double c = std::cos(a), s = std::sin(a);
  r.m[1][1] = c;
  r.m[1][2] = -s;
  r.m[2][1] = s;
  r.m[2][2] = c;
  return r;
}

Mat3 rot_y(double a) {
  Mat3 r = Mat3::identity();
  const double c = std::cos(a), s = std::sin(a);
  r.m[0][0] = c;
  r.m[0][2] = s;
  r.m[2][0] = -s;
  r.m[2][2] = c;
  return r;
}

Mat3 rot_z(double a) {
  Mat3 r = Mat3::identity();
  const double c = std::cos(a), s = std::sin(a);
  r.m[0][0] = c;
  r.m[0][1] = -s;
  r.m[1][0] = s;
  r.m[1][1] = c;
  return r;
}

Mat3 drot_x(double a) {
  Mat3 r;
  const double c = std::cos(a), s = std::sin(a);
  r.m[1][1] = -s;
  r.m[1][2] = -c;
  r.m[2][1] = c;
  r.m[2][2] = -s;
  return r;
}

Mat3 drot_y(double a) {
  Mat3 r;
  const double c = std::cos(a), s = std::sin(a);
  r.m[0][0] = -s;
  r.m[0][2] = c;
  r.m[2][0] = -c;
  r.m[2][2] = -s;
  return r;
}

Mat3 drot_z(double a) {
  Mat3 r;
  const double c = std::cos(a), s = std::sin(a);
  r.m[0][0] = -s;
  r.m[0][1] = -c;
  r.m[1][0] = c;
  r.m[1][1] = -s;
  return r;
}

}  // namespace

Mat3 rotation_matrix(double rx, double ry, double rz) {
  return rot_z(rz) * rot_y(ry) * rot_x(rx);
}

std::array<Mat3, 3> rotation_matrix_derivatives(double rx, double ry, double rz) {
  const Mat3 zx = rot_z(rz), yx = rot_y(ry), xx = rot_x(rx);
  return {zx * yx * drot_x(rx), zx * drot_y(ry) * xx, drot_z(rz) * yx * xx};
}

void TransformParams::validate() const {
  if (!(scaling > 0.0)) throw DataError("TransformParams: scaling must be > 0");
  if (!(spacing > 0.0)) throw DataError("TransformParams: spacing must be > 0");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(rotation_x) || !finite(rotation_y) || !finite(rotation_z) || !finite(scaling) ||
      !finite(spacing) || !finite(offset_z))
    throw DataError("TransformParams: non-finite shared parameter");
  for (const auto& o : per_slice_offsets)
    if (!finite(o[0]) || !finite(o[1]))
      throw DataError("TransformParams: non-finite per-slice offset");
}

Vec3 transform_point_indexed(const Vec2& c, const TransformParams& p, int ordinal,
                             int slice_index) {
  if (ordinal < 0 || static_cast<std::size_t>(ordinal) >= p.per_slice_offsets.size())
    throw std::out_of_range("transform_point: slice ordinal out of range");
  const auto& o = p.per_slice_offsets[static_cast<std::size_t>(ordinal)];
  const Vec3 w{o[0] + p.scaling * c.x, o[1] + p.scaling * c.y,
               p.offset_z + p.spacing * slice_index};
  return rotation_matrix(p.rotation_x, p.rotation_y, p.rotation_z) * w;
}

Vec3 transform_point(const Vec2& c, const TransformParams& p, int ordinal) {
  return transform_point_indexed(c, p, ordinal, ordinal);
}

}  // namespace slicereg
