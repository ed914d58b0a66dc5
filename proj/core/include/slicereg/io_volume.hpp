#pragma once

#include <filesystem>

#include "slicereg/volume.hpp"

namespace slicereg {

/// MetaImage-style text header (.mhd) plus a raw little-endian payload file.
/// ScalarVolume is stored as MET_FLOAT, BinaryVolume as MET_UCHAR.
void write_volume(const std::filesystem::path& header_path, const ScalarVolume& vol);
void write_volume(const std::filesystem::path& header_path, const BinaryVolume& mask);

ScalarVolume read_scalar_volume(const std::filesystem::path& header_path);
BinaryVolume read_binary_volume(const std::filesystem::path& header_path);

}  // namespace slicereg
