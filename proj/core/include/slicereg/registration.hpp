#pragma once

#include <string>
#include <vector>

#include "slicereg/geometry.hpp"
#include "slicereg/optimizer.hpp"
#include "slicereg/volume.hpp"

namespace slicereg {

struct OptimConfig {
  // Per-parameter-group learning rates, in the parameter's own units.
  double lr_rotation = 1e-2;
  double lr_scaling = 1e-4;
  double lr_spacing = 3e-2;
  double lr_offset_z = 5e-1;
  double lr_offset_xy = 5e-1;
  double momentum = 0.75;
  long stop_window = 1000;
  double stop_tol = 1e-5;
  long max_iterations = 200000;
  int stride = 1;   // regular pixel subsampling grid, identical across slices
  int threads = 1;
  int smoothing_radius = 0;  // optional CT mask pre-smoothing; 0 = sample the binary mask
};

struct OptimTrace {
  std::vector<double> cost;
  long iterations = 0;
  StopReason reason = StopReason::max_iterations;
  TransformParams final_params;
  long diverged_iteration = -1;
  std::string diverged_param;
};

struct CostGradResult {
  double cost = 0.0;
  // Layout: [rotation_x, rotation_y, rotation_z, scaling, spacing, offset_z,
  //          offset_x_0, offset_y_0, offset_x_1, ...]
  std::vector<double> gradient;
};

std::vector<double> params_to_vector(const TransformParams& params);
TransformParams params_from_vector(const std::vector<double>& x, std::size_t slice_count);

/// MSE over all pixels of every photo mask between the mask value and the
/// trilinearly sampled CT mask at the transformed position. Always in [0,1]
/// for a binary CT mask.
double mse_cost(const MaskStack& stack, const BinaryVolume& ct_mask,
                const TransformParams& params, int stride = 1, int threads = 1);
double mse_cost(const MaskStack& stack, const ScalarVolume& ct, const TransformParams& params,
                int stride = 1, int threads = 1);

/// Cost plus the exact gradient with respect to every entry of the parameter
/// vector (chain rule through the transform and the trilinear blend; exact
/// wherever sampled points avoid interpolation-cell boundaries). The pixel
/// reduction runs over a fixed block decomposition, so results are
/// bitwise-identical for any thread count.
CostGradResult mse_cost_gradient(const MaskStack& stack, const BinaryVolume& ct_mask,
                                 const TransformParams& params, int stride = 1, int threads = 1);
CostGradResult mse_cost_gradient(const MaskStack& stack, const ScalarVolume& ct,
                                 const TransformParams& params, int stride = 1, int threads = 1);

/// Joint registration: momentum gradient descent on mse_cost over the shared
/// parameters and all per-slice offsets. Stops when the cost range over the
/// last stop_window iterations is below stop_tol, at max_iterations, or with a
/// diverged trace naming the first non-finite parameter.
OptimTrace optimize_joint(const MaskStack& stack, const BinaryVolume& ct_mask,
                          const TransformParams& initial, const OptimConfig& cfg);

/// Separate-slice ablation: each slice optimized on its own with free
/// rotations, scaling and offsets; spacing frozen at the initial value. Each
/// returned transform binds a single slice at ordinal 0 (the slice's z
/// position is baked into offset_z).
std::vector<OptimTrace> optimize_separate(const MaskStack& stack, const BinaryVolume& ct_mask,
                                          const TransformParams& initial, const OptimConfig& cfg);

/// Splits a joint result into the equivalent per-slice transforms (ordinal-0
/// convention, matching optimize_separate output).
std::vector<TransformParams> split_joint(const TransformParams& params, const MaskStack& stack);

/// Box-smoothed copy of a binary mask (three passes approximate a Gaussian),
/// used to widen the capture range of the registration when enabled.
ScalarVolume smooth_mask(const BinaryVolume& mask, int radius);

}  // namespace slicereg
