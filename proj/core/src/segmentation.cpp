#include "slicereg/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace slicereg {

int otsu_threshold(const std::array<std::uint64_t, 256>& histogram) {
  std::uint64_t total = 0;
  int nonempty = 0;
  double weighted = 0.0;
  for (int i = 0; i < 256; ++i) {
    total += histogram[static_cast<std::size_t>(i)];
    if (histogram[static_cast<std::size_t>(i)] > 0) ++nonempty;
    weighted += static_cast<double>(i) * static_cast<double>(histogram[static_cast<std::size_t>(i)]);
  }
  if (nonempty < 2)
    throw DataError("otsu_threshold: no bimodal structure (fewer than two nonempty bins)");

  double best_var = -1.0;
  int best_t = 0;
  double sum0 = 0.0;
  std::uint64_t n0 = 0;
  // Split at t: class 0 holds levels < t, class 1 holds levels >= t.
  for (int t = 1; t < 256; ++t) {
    n0 += histogram[static_cast<std::size_t>(t - 1)];
    sum0 += static_cast<double>(t - 1) * static_cast<double>(histogram[static_cast<std::size_t>(t - 1)]);
    const std::uint64_t n1 = total - n0;
    if (n0 == 0 || n1 == 0) continue;
    const double mu0 = sum0 / static_cast<double>(n0);
    const double mu1 = (weighted - sum0) / static_cast<double>(n1);
    const double w0 = static_cast<double>(n0) / static_cast<double>(total);
    const double w1 = 1.0 - w0;
    const double var = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    if (var > best_var) {
      best_var = var;
      best_t = t;
    }
  }
  return best_t;
}

double otsu_threshold(const ScalarVolume& vol) {
  float lo = std::numeric_limits<float>::max();
  float hi = std::numeric_limits<float>::lowest();
  for (float v : vol.data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) throw DataError("otsu_threshold: volume has constant intensity");
  const double range = static_cast<double>(hi) - static_cast<double>(lo);
  std::array<std::uint64_t, 256> hist{};
  for (float v : vol.data) {
    int bin = static_cast<int>((static_cast<double>(v) - lo) / range * 256.0);
    bin = std::clamp(bin, 0, 255);
    ++hist[static_cast<std::size_t>(bin)];
  }
  const int t = otsu_threshold(hist);
  return static_cast<double>(lo) + static_cast<double>(t) * range / 256.0;
}

double average_otsu(const std::vector<ScalarVolume>& volumes) {
  if (volumes.empty()) throw DataError("average_otsu: empty volume list");
  double sum = 0.0;
  for (const auto& v : volumes) sum += otsu_threshold(v);
  return sum / static_cast<double>(volumes.size());
}

BinaryVolume binarize(const ScalarVolume& vol, double t) {
  BinaryVolume out(vol.dims, vol.voxel_size);
  for (std::size_t i = 0; i < vol.data.size(); ++i)
    out.data[i] = static_cast<double>(vol.data[i]) >= t ? 1 : 0;
  return out;
}

namespace {

// Separable sliding-window max (dilation) or min (erosion) along one axis of
// an x-fastest grid.
void axis_filter(std::vector<std::uint8_t>& data, int nx, int ny, int nz, int axis, int radius,
                 bool dilate) {
  const int n[3] = {nx, ny, nz};
  const std::size_t stride[3] = {1, static_cast<std::size_t>(nx),
                                 static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)};
  const int len = n[axis];
  std::vector<std::uint8_t> line(static_cast<std::size_t>(len));
  const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
  for (int j = 0; j < n[a2]; ++j)
    for (int i = 0; i < n[a1]; ++i) {
      const std::size_t base = stride[a1] * static_cast<std::size_t>(i) +
                               stride[a2] * static_cast<std::size_t>(j);
      for (int k = 0; k < len; ++k) line[static_cast<std::size_t>(k)] = data[base + stride[axis] * k];
      for (int k = 0; k < len; ++k) {
        std::uint8_t v = dilate ? 0 : 1;
        const int lo = std::max(0, k - radius), hi = std::min(len - 1, k + radius);
        for (int w = lo; w <= hi; ++w) {
          const std::uint8_t x = line[static_cast<std::size_t>(w)];
          v = dilate ? std::max(v, x) : std::min(v, x);
        }
        // Erosion against a zero border: windows clipped by the grid edge see
        // implicit zeros outside.
        if (!dilate && (k - radius < 0 || k + radius > len - 1)) v = 0;
        data[base + stride[axis] * k] = v;
      }
    }
}

void box_morph(std::vector<std::uint8_t>& data, int nx, int ny, int nz, int radius, bool dilate) {
  const int axes = (nz > 1) ? 3 : 2;
  for (int a = 0; a < axes; ++a) axis_filter(data, nx, ny, nz, a, radius, dilate);
}

std::vector<std::uint8_t> close_impl(std::vector<std::uint8_t> data, int nx, int ny, int nz,
                                     int radius) {
  if (radius < 1) throw DataError("morph_close: radius must be >= 1");
  // Pad by the radius so the dilation is not clipped at the grid edge; the
  // closing of a mask must not depend on how close it sits to the border.
  const int p = radius;
  const int px = nx + 2 * p, py = ny + 2 * p, pz = (nz > 1) ? nz + 2 * p : 1;
  const int zoff = (nz > 1) ? p : 0;
  std::vector<std::uint8_t> padded(static_cast<std::size_t>(px) * py * pz, 0);
  auto pidx = [&](int x, int y, int z) {
    return static_cast<std::size_t>(x) +
           static_cast<std::size_t>(px) * (static_cast<std::size_t>(y) + static_cast<std::size_t>(py) * z);
  };
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x)
        padded[pidx(x + p, y + p, z + zoff)] =
            data[static_cast<std::size_t>(x) +
                 static_cast<std::size_t>(nx) * (static_cast<std::size_t>(y) + static_cast<std::size_t>(ny) * z)];
  box_morph(padded, px, py, pz, radius, true);
  box_morph(padded, px, py, pz, radius, false);
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x)
        data[static_cast<std::size_t>(x) +
             static_cast<std::size_t>(nx) * (static_cast<std::size_t>(y) + static_cast<std::size_t>(ny) * z)] =
            padded[pidx(x + p, y + p, z + zoff)];
  return data;
}

struct GridRef {
  std::vector<std::uint8_t>& data;
  int nx, ny, nz;
  std::size_t idx(int x, int y, int z) const {
    return static_cast<std::size_t>(x) +
           static_cast<std::size_t>(nx) * (static_cast<std::size_t>(y) + static_cast<std::size_t>(ny) * z);
  }
};

// Flood fill over voxels with value `match`, writing `label` into out; 6/4
// connectivity. Returns component size.
std::size_t flood(const GridRef& g, std::vector<std::uint8_t>& visited, std::size_t seed,
                  std::uint8_t match, std::vector<std::size_t>* members) {
  std::queue<std::size_t> q;
  q.push(seed);
  visited[seed] = 1;
  std::size_t size = 0;
  const std::size_t sx = 1, sy = static_cast<std::size_t>(g.nx),
                    sz = static_cast<std::size_t>(g.nx) * static_cast<std::size_t>(g.ny);
  while (!q.empty()) {
    const std::size_t cur = q.front();
    q.pop();
    ++size;
    if (members) members->push_back(cur);
    const std::size_t z = cur / sz, rem = cur % sz, y = rem / sy, x = rem % sy;
    auto push = [&](std::size_t n) {
      if (!visited[n] && g.data[n] == match) {
        visited[n] = 1;
        q.push(n);
      }
    };
    if (x > 0) push(cur - sx);
    if (x + 1 < static_cast<std::size_t>(g.nx)) push(cur + sx);
    if (y > 0) push(cur - sy);
    if (y + 1 < static_cast<std::size_t>(g.ny)) push(cur + sy);
    if (g.nz > 1) {
      if (z > 0) push(cur - sz);
      if (z + 1 < static_cast<std::size_t>(g.nz)) push(cur + sz);
    }
  }
  return size;
}

std::vector<std::uint8_t> largest_component_impl(std::vector<std::uint8_t> data, int nx, int ny,
                                                 int nz) {
  GridRef g{data, nx, ny, nz};
  std::vector<std::uint8_t> visited(data.size(), 0);
  std::vector<std::size_t> best, current;
  std::size_t best_size = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i] != 1 || visited[i]) continue;
    current.clear();
    const std::size_t size = flood(g, visited, i, 1, &current);
    if (size > best_size) {  // strict: ties keep the earlier (lower-seed) one
      best_size = size;
      best.swap(current);
    }
  }
  std::fill(data.begin(), data.end(), 0);
  for (std::size_t i : best) data[i] = 1;
  return data;
}

std::vector<std::uint8_t> fill_holes_impl(std::vector<std::uint8_t> data, int nx, int ny, int nz) {
  GridRef g{data, nx, ny, nz};
  std::vector<std::uint8_t> outside(data.size(), 0);
  auto seed_if_zero = [&](int x, int y, int z) {
    const std::size_t i = g.idx(x, y, z);
    if (data[i] == 0 && !outside[i]) flood(g, outside, i, 0, nullptr);
  };
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < ny; ++y)
      for (int x = 0; x < nx; ++x)
        if (x == 0 || y == 0 || x == nx - 1 || y == ny - 1 || (nz > 1 && (z == 0 || z == nz - 1)))
          seed_if_zero(x, y, z);
  for (std::size_t i = 0; i < data.size(); ++i)
    if (data[i] == 0 && !outside[i]) data[i] = 1;
  return data;
}

}  // namespace

BinaryVolume morph_close(const BinaryVolume& mask, int radius) {
  BinaryVolume out = mask;
  out.data = close_impl(std::move(out.data), mask.dims.nx, mask.dims.ny, mask.dims.nz, radius);
  return out;
}

Mask2 morph_close(const Mask2& mask, int radius) {
  Mask2 out = mask;
  out.data = close_impl(std::move(out.data), mask.width, mask.height, 1, radius);
  return out;
}

BinaryVolume largest_component(const BinaryVolume& mask) {
  BinaryVolume out = mask;
  out.data = largest_component_impl(std::move(out.data), mask.dims.nx, mask.dims.ny, mask.dims.nz);
  return out;
}

Mask2 largest_component(const Mask2& mask) {
  Mask2 out = mask;
  out.data = largest_component_impl(std::move(out.data), mask.width, mask.height, 1);
  return out;
}

BinaryVolume fill_holes(const BinaryVolume& mask) {
  BinaryVolume out = mask;
  out.data = fill_holes_impl(std::move(out.data), mask.dims.nx, mask.dims.ny, mask.dims.nz);
  return out;
}

Mask2 fill_holes(const Mask2& mask) {
  Mask2 out = mask;
  out.data = fill_holes_impl(std::move(out.data), mask.width, mask.height, 1);
  return out;
}

BinaryVolume segment_ct(const ScalarVolume& vol, double t, int close_radius) {
  return fill_holes(largest_component(morph_close(binarize(vol, t), close_radius)));
}

}  // namespace slicereg
