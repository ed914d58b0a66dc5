#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "slicereg/volume.hpp"

namespace slicereg {

/// 8-bit grayscale image (overlay and resample inputs/outputs).
struct Image8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // row-major

  std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// 8-bit RGB image (overlay output).
struct ImageRGB8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // row-major, 3 bytes per pixel
};

/// Reads a grayscale image from PNG or PGM (P2/P5), selected by content.
Image8 read_image(const std::filesystem::path& path);

/// Reads a binary mask: nonzero (>127) pixels become 1.
Mask2 read_mask(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const Image8& image);
void write_png(const std::filesystem::path& path, const ImageRGB8& image);

/// Writes a mask as an 8-bit grayscale PNG with values {0, 255}.
void write_mask_png(const std::filesystem::path& path, const Mask2& mask);

}  // namespace slicereg
