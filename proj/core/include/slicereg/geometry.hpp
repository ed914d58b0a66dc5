#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace slicereg {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
};

struct Mat3 {
  // Row-major.
  std::array<std::array<double, 3>, 3> m{};

  static Mat3 identity() {
    Mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
    return r;
  }

  Vec3 operator*(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }

  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
        r.m[i][j] = s;
      }
    return r;
  }

  Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }

  Vec3 column(int j) const { return {m[0][j], m[1][j], m[2][j]}; }

  double determinant() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }
};

/// Euler rotation, fixed convention R = Rz(rz) * Ry(ry) * Rx(rx).
Mat3 rotation_matrix(double rx, double ry, double rz);

/// Partial derivatives {dR/drx, dR/dry, dR/drz} of rotation_matrix.
std::array<Mat3, 3> rotation_matrix_derivatives(double rx, double ry, double rz);

/// Shared parameters of the parallel-slice transformation model plus the
/// per-slice in-plane offsets. Angles in radians, scaling in CT voxels per
/// photo pixel, spacing and offsets in CT voxels. Coordinates are centered:
/// photo (u,v) relative to the photo image center, CT output relative to the
/// volume center.
struct TransformParams {
  double rotation_x = 0.0;
  double rotation_y = 0.0;
  double rotation_z = 0.0;
  double scaling = 1.0;
  double spacing = 1.0;
  double offset_z = 0.0;
  std::vector<std::array<double, 2>> per_slice_offsets;

  std::size_t slice_count() const { return per_slice_offsets.size(); }

  /// Throws DataError if scaling/spacing are not positive or any value is
  /// non-finite.
  void validate() const;
};

/// Maps photo coordinate c of slice `ordinal` (also used as the slice index i
/// in the spacing term) into centered CT voxel coordinates:
///   R * ([offset_x_i, offset_y_i, offset_z + spacing*i]^T + scaling*[u,v,0]^T)
/// Throws std::out_of_range if ordinal is not a valid offset index.
Vec3 transform_point(const Vec2& c, const TransformParams& params, int ordinal);

/// Same, but with the slice index in the spacing term decoupled from the
/// offset ordinal (used when registering subsets that keep their original
/// photograph indices).
Vec3 transform_point_indexed(const Vec2& c, const TransformParams& params, int ordinal,
                             int slice_index);

/// Centered-coordinate shift for an axis of n voxels: index = coord + (n-1)/2.
inline double center_offset(int n) { return 0.5 * (n - 1); }

}  // namespace slicereg
