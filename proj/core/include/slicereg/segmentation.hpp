#pragma once

#include <cstdint>
#include <vector>

#include "slicereg/volume.hpp"

namespace slicereg {

/// Otsu's method on a 256-bin histogram. Returns the bin level t that
/// maximizes between-class variance for the split {levels < t} / {levels >= t};
/// ties broken toward the lowest level. Throws DataError when fewer than two
/// bins are nonempty.
int otsu_threshold(const std::array<std::uint64_t, 256>& histogram);

/// Otsu threshold of one volume in its own intensity units. The volume is
/// quantized to 256 bins spanning its min-max range; the resulting bin level t
/// maps back to min + t*(max-min)/256 so that "value >= threshold" agrees with
/// "bin >= t".
double otsu_threshold(const ScalarVolume& vol);

/// Mean of the per-volume Otsu thresholds, in intensity units (the paper's
/// average-Otsu rule). Throws DataError on an empty list.
double average_otsu(const std::vector<ScalarVolume>& volumes);

/// data[i] = 1 iff vol.data[i] >= t.
BinaryVolume binarize(const ScalarVolume& vol, double t);

/// Morphological closing with a box structuring element of side 2*radius+1.
BinaryVolume morph_close(const BinaryVolume& mask, int radius);
Mask2 morph_close(const Mask2& mask, int radius);

/// Keeps only the largest connected component (6-connectivity in 3D,
/// 4-connectivity in 2D); ties broken by lowest linear index of the
/// component's first voxel in scan order. Empty input stays empty.
BinaryVolume largest_component(const BinaryVolume& mask);
Mask2 largest_component(const Mask2& mask);

/// Fills all 0-regions not connected to the border.
BinaryVolume fill_holes(const BinaryVolume& mask);
Mask2 fill_holes(const Mask2& mask);

/// Full CT segmentation chain: binarize, close, largest component, fill holes.
BinaryVolume segment_ct(const ScalarVolume& vol, double t, int close_radius = 1);

}  // namespace slicereg
