#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <vector>

#include "slicereg/errors.hpp"

namespace slicereg {

struct Dims3 {
  int nx = 0;
  int ny = 0;
  int nz = 0;

  std::size_t count() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
           static_cast<std::size_t>(nz);
  }
  bool operator==(const Dims3&) const = default;
};

/// 3D voxel grid, x-fastest layout, isotropic voxel size in mm.
struct ScalarVolume {
  Dims3 dims;
  double voxel_size = 1.0;
  std::vector<float> data;

  ScalarVolume() = default;
  ScalarVolume(Dims3 d, double voxel_size_mm, std::vector<float> values)
      : dims(d), voxel_size(voxel_size_mm), data(std::move(values)) {
    validate();
  }
  ScalarVolume(Dims3 d, double voxel_size_mm, float fill = 0.0f)
      : dims(d), voxel_size(voxel_size_mm), data(d.count(), fill) {
    validate();
  }

  std::size_t index(int x, int y, int z) const {
    return static_cast<std::size_t>(x) +
           static_cast<std::size_t>(dims.nx) *
               (static_cast<std::size_t>(y) + static_cast<std::size_t>(dims.ny) * z);
  }
  float at(int x, int y, int z) const { return data[index(x, y, z)]; }
  float& at(int x, int y, int z) { return data[index(x, y, z)]; }

  void validate() const {
    if (dims.nx <= 0 || dims.ny <= 0 || dims.nz <= 0)
      throw DataError("ScalarVolume: dims must be positive");
    if (!(voxel_size > 0.0)) throw DataError("ScalarVolume: voxel_size must be > 0");
    if (data.size() != dims.count())
      throw DataError("ScalarVolume: data length does not match dims");
  }
};

/// 3D binary mask; every element is exactly 0 or 1.
struct BinaryVolume {
  Dims3 dims;
  double voxel_size = 1.0;
  std::vector<std::uint8_t> data;

  BinaryVolume() = default;
  BinaryVolume(Dims3 d, double voxel_size_mm, std::vector<std::uint8_t> values)
      : dims(d), voxel_size(voxel_size_mm), data(std::move(values)) {
    validate();
  }
  BinaryVolume(Dims3 d, double voxel_size_mm, std::uint8_t fill = 0)
      : dims(d), voxel_size(voxel_size_mm), data(d.count(), fill) {
    validate();
  }

  std::size_t index(int x, int y, int z) const {
    return static_cast<std::size_t>(x) +
           static_cast<std::size_t>(dims.nx) *
               (static_cast<std::size_t>(y) + static_cast<std::size_t>(dims.ny) * z);
  }
  std::uint8_t at(int x, int y, int z) const { return data[index(x, y, z)]; }
  std::uint8_t& at(int x, int y, int z) { return data[index(x, y, z)]; }

  void validate() const {
    if (dims.nx <= 0 || dims.ny <= 0 || dims.nz <= 0)
      throw DataError("BinaryVolume: dims must be positive");
    if (!(voxel_size > 0.0)) throw DataError("BinaryVolume: voxel_size must be > 0");
    if (data.size() != dims.count())
      throw DataError("BinaryVolume: data length does not match dims");
    for (auto v : data)
      if (v > 1) throw DataError("BinaryVolume: values must be 0 or 1");
  }
};

/// 2D binary mask, row-major.
struct Mask2 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  Mask2() = default;
  Mask2(int w, int h, std::vector<std::uint8_t> values)
      : width(w), height(h), data(std::move(values)) {
    validate();
  }
  Mask2(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
    validate();
  }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
  std::uint8_t at(int x, int y) const { return data[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return data[index(x, y)]; }

  std::size_t area() const {
    std::size_t a = 0;
    for (auto v : data) a += v;
    return a;
  }

  void validate() const {
    if (width <= 0 || height <= 0) throw DataError("Mask2: dims must be positive");
    if (data.size() != static_cast<std::size_t>(width) * height)
      throw DataError("Mask2: data length does not match dims");
    for (auto v : data)
      if (v > 1) throw DataError("Mask2: values must be 0 or 1");
  }
};

/// Ordered set of same-sized slice masks, stem to calyx. slice_indices carry
/// the photograph indices and stay strictly increasing (subsets keep the
/// original indices).
struct MaskStack {
  std::vector<Mask2> masks;
  std::vector<int> slice_indices;

  MaskStack() = default;
  MaskStack(std::vector<Mask2> m, std::vector<int> indices)
      : masks(std::move(m)), slice_indices(std::move(indices)) {
    validate();
  }

  std::size_t count() const { return masks.size(); }
  int width() const { return masks.empty() ? 0 : masks.front().width; }
  int height() const { return masks.empty() ? 0 : masks.front().height; }

  void validate() const {
    if (masks.empty()) throw DataError("MaskStack: needs at least one mask");
    if (slice_indices.size() != masks.size())
      throw DataError("MaskStack: slice_indices count mismatch");
    for (const auto& m : masks) {
      m.validate();
      if (m.width != masks.front().width || m.height != masks.front().height)
        throw DataError("MaskStack: masks must share dimensions");
    }
    for (std::size_t i = 1; i < slice_indices.size(); ++i)
      if (slice_indices[i] <= slice_indices[i - 1])
        throw DataError("MaskStack: slice_indices must be strictly increasing");
  }
};

}  // namespace slicereg
