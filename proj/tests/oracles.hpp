// Independent reference implementations used to check the library. Each
// oracle is deliberately written in the most direct way possible (brute
// force, exhaustive scan, textbook formulas) and shares no code with the
// library under test.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "slicereg/geometry.hpp"
#include "slicereg/volume.hpp"

namespace oracle {

// ---- matrices ------------------------------------------------------------

using Mat4 = std::array<std::array<double, 4>, 4>;

inline Mat4 mat4_identity() {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

inline Mat4 mat4_mul(const Mat4& a, const Mat4& b) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline std::array<double, 3> mat4_apply(const Mat4& m, double x, double y, double z) {
  const double in[4] = {x, y, z, 1.0};
  double out[4] = {0, 0, 0, 0};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) out[i] += m[i][k] * in[k];
  return {out[0], out[1], out[2]};
}

inline Mat4 mat4_rot_x(double a) {
  Mat4 m = mat4_identity();
  m[1][1] = std::cos(a); m[1][2] = -std::sin(a);
  m[2][1] = std::sin(a); m[2][2] = std::cos(a);
  return m;
}
inline Mat4 mat4_rot_y(double a) {
  Mat4 m = mat4_identity();
  m[0][0] = std::cos(a); m[0][2] = std::sin(a);
  m[2][0] = -std::sin(a); m[2][2] = std::cos(a);
  return m;
}
inline Mat4 mat4_rot_z(double a) {
  Mat4 m = mat4_identity();
  m[0][0] = std::cos(a); m[0][1] = -std::sin(a);
  m[1][0] = std::sin(a); m[1][1] = std::cos(a);
  return m;
}
inline Mat4 mat4_scale(double s) {
  Mat4 m = mat4_identity();
  m[0][0] = m[1][1] = m[2][2] = s;
  return m;
}
inline Mat4 mat4_translate(double x, double y, double z) {
  Mat4 m = mat4_identity();
  m[0][3] = x; m[1][3] = y; m[2][3] = z;
  return m;
}

// 3x3 product of the three axis rotations, computed with an independent
// element-by-element multiply.
inline std::array<std::array<double, 3>, 3> rot3_zyx(double rx, double ry, double rz) {
  const Mat4 m = mat4_mul(mat4_rot_z(rz), mat4_mul(mat4_rot_y(ry), mat4_rot_x(rx)));
  std::array<std::array<double, 3>, 3> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[i][j];
  return r;
}

// ---- trilinear -----------------------------------------------------------

// 8-corner weighted sum, independent loop formulation.
inline double trilinear_8corner(const slicereg::Dims3& dims, const std::vector<float>& data,
                                double px, double py, double pz) {
  const double qx = px + 0.5 * (dims.nx - 1);
  const double qy = py + 0.5 * (dims.ny - 1);
  const double qz = pz + 0.5 * (dims.nz - 1);
  const int ix = static_cast<int>(std::floor(qx));
  const int iy = static_cast<int>(std::floor(qy));
  const int iz = static_cast<int>(std::floor(qz));
  double total = 0.0;
  for (int dz = 0; dz <= 1; ++dz)
    for (int dy = 0; dy <= 1; ++dy)
      for (int dx = 0; dx <= 1; ++dx) {
        const int x = ix + dx, y = iy + dy, z = iz + dz;
        double value = 0.0;
        if (x >= 0 && y >= 0 && z >= 0 && x < dims.nx && y < dims.ny && z < dims.nz)
          value = data[static_cast<std::size_t>(x) +
                       static_cast<std::size_t>(dims.nx) *
                           (static_cast<std::size_t>(y) +
                            static_cast<std::size_t>(dims.ny) * static_cast<std::size_t>(z))];
        const double wx = dx ? (qx - ix) : (1.0 - (qx - ix));
        const double wy = dy ? (qy - iy) : (1.0 - (qy - iy));
        const double wz = dz ? (qz - iz) : (1.0 - (qz - iz));
        total += wx * wy * wz * value;
      }
  return total;
}

// ---- Otsu ----------------------------------------------------------------

// Exhaustive between-class variance sweep; ties toward the lowest level.
inline int otsu_sweep(const std::array<std::uint64_t, 256>& h) {
  double total = 0.0, total_mean = 0.0;
  for (int i = 0; i < 256; ++i) {
    total += static_cast<double>(h[static_cast<std::size_t>(i)]);
    total_mean += static_cast<double>(i) * static_cast<double>(h[static_cast<std::size_t>(i)]);
  }
  int best_t = -1;
  double best_var = -1.0;
  for (int t = 1; t < 256; ++t) {
    double w0 = 0.0, m0 = 0.0;
    for (int i = 0; i < t; ++i) {
      w0 += static_cast<double>(h[static_cast<std::size_t>(i)]);
      m0 += static_cast<double>(i) * static_cast<double>(h[static_cast<std::size_t>(i)]);
    }
    const double w1 = total - w0;
    if (w0 == 0.0 || w1 == 0.0) continue;
    const double mean0 = m0 / w0;
    const double mean1 = (total_mean - m0) / w1;
    const double var = w0 * w1 * (mean0 - mean1) * (mean0 - mean1);
    if (var > best_var + 1e-12 * std::max(1.0, best_var)) {
      best_var = var;
      best_t = t;
    }
  }
  return best_t;
}

// ---- morphology / components ----------------------------------------------

inline slicereg::Mask2 dilate2_naive(const slicereg::Mask2& m, int r) {
  slicereg::Mask2 out(m.width, m.height);
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x) {
      std::uint8_t v = 0;
      for (int dy = -r; dy <= r && !v; ++dy)
        for (int dx = -r; dx <= r && !v; ++dx) {
          const int xx = x + dx, yy = y + dy;
          if (xx >= 0 && yy >= 0 && xx < m.width && yy < m.height && m.at(xx, yy)) v = 1;
        }
      out.at(x, y) = v;
    }
  return out;
}

inline slicereg::Mask2 erode2_naive(const slicereg::Mask2& m, int r) {
  slicereg::Mask2 out(m.width, m.height);
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x) {
      std::uint8_t v = 1;
      for (int dy = -r; dy <= r && v; ++dy)
        for (int dx = -r; dx <= r && v; ++dx) {
          const int xx = x + dx, yy = y + dy;
          const std::uint8_t inside =
              (xx >= 0 && yy >= 0 && xx < m.width && yy < m.height) ? m.at(xx, yy) : 0;
          if (!inside) v = 0;
        }
      out.at(x, y) = v;
    }
  return out;
}

inline slicereg::BinaryVolume dilate3_naive(const slicereg::BinaryVolume& m, int r) {
  slicereg::BinaryVolume out(m.dims, m.voxel_size);
  for (int z = 0; z < m.dims.nz; ++z)
    for (int y = 0; y < m.dims.ny; ++y)
      for (int x = 0; x < m.dims.nx; ++x) {
        std::uint8_t v = 0;
        for (int dz = -r; dz <= r && !v; ++dz)
          for (int dy = -r; dy <= r && !v; ++dy)
            for (int dx = -r; dx <= r && !v; ++dx) {
              const int xx = x + dx, yy = y + dy, zz = z + dz;
              if (xx >= 0 && yy >= 0 && zz >= 0 && xx < m.dims.nx && yy < m.dims.ny &&
                  zz < m.dims.nz && m.at(xx, yy, zz))
                v = 1;
            }
        out.at(x, y, z) = v;
      }
  return out;
}

inline slicereg::BinaryVolume erode3_naive(const slicereg::BinaryVolume& m, int r) {
  slicereg::BinaryVolume out(m.dims, m.voxel_size);
  for (int z = 0; z < m.dims.nz; ++z)
    for (int y = 0; y < m.dims.ny; ++y)
      for (int x = 0; x < m.dims.nx; ++x) {
        std::uint8_t v = 1;
        for (int dz = -r; dz <= r && v; ++dz)
          for (int dy = -r; dy <= r && v; ++dy)
            for (int dx = -r; dx <= r && v; ++dx) {
              const int xx = x + dx, yy = y + dy, zz = z + dz;
              const std::uint8_t inside = (xx >= 0 && yy >= 0 && zz >= 0 && xx < m.dims.nx &&
                                           yy < m.dims.ny && zz < m.dims.nz)
                                              ? m.at(xx, yy, zz)
                                              : 0;
              if (!inside) v = 0;
            }
        out.at(x, y, z) = v;
      }
  return out;
}

// Component sizes via recursive-free flood fill, 4-connectivity, scan order.
inline std::vector<std::size_t> component_sizes_2d(const slicereg::Mask2& m) {
  std::vector<int> label(m.data.size(), -1);
  std::vector<std::size_t> sizes;
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x) {
      if (!m.at(x, y) || label[m.index(x, y)] >= 0) continue;
      const int id = static_cast<int>(sizes.size());
      std::size_t size = 0;
      std::vector<std::pair<int, int>> stack{{x, y}};
      label[m.index(x, y)] = id;
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        ++size;
        const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& d : nb) {
          const int nx2 = cx + d[0], ny2 = cy + d[1];
          if (nx2 < 0 || ny2 < 0 || nx2 >= m.width || ny2 >= m.height) continue;
          if (!m.at(nx2, ny2) || label[m.index(nx2, ny2)] >= 0) continue;
          label[m.index(nx2, ny2)] = id;
          stack.emplace_back(nx2, ny2);
        }
      }
      sizes.push_back(size);
    }
  return sizes;
}

// ---- LP feasibility --------------------------------------------------------
// Is p inside the convex hull of the generator points? Feasibility of
//   sum_k lambda_k s_k = p, sum lambda = 1, lambda >= 0
// decided by a dense two-phase simplex on the standard form with artificial
// variables. Points are scaled into a unit box first for conditioning.
inline bool in_hull_lp(const std::vector<slicereg::Vec3>& pts, const slicereg::Vec3& p,
                       double eps = 1e-9) {
  const std::size_t n = pts.size();
  if (n == 0) return false;
  // Constraint matrix: 4 rows (x, y, z, sum) by n lambda columns.
  const std::size_t rows = 4, cols = n + rows;  // + artificial
  std::vector<std::vector<double>> T(rows + 1, std::vector<double>(cols + 1, 0.0));
  const double rhs[4] = {p.x, p.y, p.z, 1.0};
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < n; ++k)
      T[r][k] = (r == 0) ? pts[k].x : (r == 1) ? pts[k].y : (r == 2) ? pts[k].z : 1.0;
    double b = rhs[r];
    if (b < 0) {  // keep rhs nonnegative for phase 1
      b = -b;
      for (std::size_t k = 0; k < n; ++k) T[r][k] = -T[r][k];
    }
    T[r][n + r] = 1.0;  // artificial
    T[r][cols] = b;
  }
  // Phase-1 objective: minimize sum of artificials. Basic (artificial)
  // columns must start with reduced cost 0, so only the lambda columns and
  // the rhs are folded into the objective row.
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    basis[r] = n + r;
    for (std::size_t c = 0; c < n; ++c) T[rows][c] -= T[r][c];
    T[rows][cols] -= T[r][cols];
  }
  for (int iter = 0; iter < 10000; ++iter) {
    // Bland's rule; artificials never re-enter the basis (safe for a pure
    // feasibility test).
    std::size_t pivot_col = cols;
    for (std::size_t c = 0; c < n; ++c)
      if (T[rows][c] < -eps) {
        pivot_col = c;
        break;
      }
    if (pivot_col == cols) break;
    std::size_t pivot_row = rows;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < rows; ++r)
      if (T[r][pivot_col] > eps) {
        const double ratio = T[r][cols] / T[r][pivot_col];
        if (ratio < best - eps || (std::fabs(ratio - best) <= eps &&
                                   (pivot_row == rows || basis[r] < basis[pivot_row]))) {
          best = ratio;
          pivot_row = r;
        }
      }
    if (pivot_row == rows) break;  // unbounded (cannot happen here)
    const double pv = T[pivot_row][pivot_col];
    for (std::size_t c = 0; c <= cols; ++c) T[pivot_row][c] /= pv;
    for (std::size_t r = 0; r <= rows; ++r) {
      if (r == pivot_row) continue;
      const double f = T[r][pivot_col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols; ++c) T[r][c] -= f * T[pivot_row][c];
    }
    basis[pivot_row] = pivot_col;
  }
  return std::fabs(T[rows][cols]) <= 1e-7;  // phase-1 optimum ~ 0 => feasible
}

}  // namespace oracle
