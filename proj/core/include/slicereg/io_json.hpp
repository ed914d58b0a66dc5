#pragma once

#include <filesystem>
#include <vector>

#include "slicereg/geometry.hpp"

namespace slicereg {

/// A transform plus the stack binding it was fitted against. Serialized as a
/// versioned JSON document carrying the coordinate conventions; doubles
/// round-trip exactly.
struct ThetaDocument {
  TransformParams params;
  std::vector<int> slice_indices;
  int photo_width = 0;
  int photo_height = 0;
};

void write_theta(const std::filesystem::path& path, const ThetaDocument& doc);
ThetaDocument read_theta(const std::filesystem::path& path);

/// Per-slice transform list (separate registration output).
void write_theta_list(const std::filesystem::path& path, const std::vector<ThetaDocument>& docs);
std::vector<ThetaDocument> read_theta_list(const std::filesystem::path& path);

}  // namespace slicereg
