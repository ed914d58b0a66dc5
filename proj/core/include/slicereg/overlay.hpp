#pragma once

#include "slicereg/io_image.hpp"
#include "slicereg/io_json.hpp"
#include "slicereg/volume.hpp"

namespace slicereg {

/// Renders the registered CT slice for one photograph: the CT reconstruction
/// is trilinearly sampled over the photo pixel grid under the transform, then
/// scaled from the volume's global min/max to 8 bits.
Image8 resample_slice(const ScalarVolume& vol, const ThetaDocument& theta, int slice_index);

/// Combined view: green channel from the photo, red and blue from the CT
/// slice. Equal intensities render gray; greener means the photo is brighter,
/// purpler means the CT slice is brighter.
ImageRGB8 render_overlay(const Image8& photo, const Image8& ct_slice);

}  // namespace slicereg
