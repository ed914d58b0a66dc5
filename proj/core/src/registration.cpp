#include "slicereg/registration.hpp"

#include <algorithm>
#include <cmath>

#include "slicereg/parallel.hpp"
#include "slicereg/sampling.hpp"

namespace slicereg {

std::vector<double> params_to_vector(const TransformParams& p) {
  std::vector<double> x;
  x.reserve(6 + 2 * p.per_slice_offsets.size());
  x.push_back(p.rotation_x);
  x.push_back(p.rotation_y);
  x.push_back(p.rotation_z);
  x.push_back(p.scaling);
  x.push_back(p.spacing);
  x.push_back(p.offset_z);
  for (const auto& o : p.per_slice_offsets) {
    x.push_back(o[0]);
    x.push_back(o[1]);
  }
  return x;
}

TransformParams params_from_vector(const std::vector<double>& x, std::size_t slice_count) {
  TransformParams p;
  p.rotation_x = x[0];
  p.rotation_y = x[1];
  p.rotation_z = x[2];
  p.scaling = x[3];
  p.spacing = x[4];
  p.offset_z = x[5];
  p.per_slice_offsets.resize(slice_count);
  for (std::size_t k = 0; k < slice_count; ++k)
    p.per_slice_offsets[k] = {x[6 + 2 * k], x[7 + 2 * k]};
  return p;
}

namespace {

constexpr int kRowsPerBlock = 16;  // sampled rows per reduction block

struct BlockResult {
  double cost = 0.0;
  // [rx, ry, rz, scaling, spacing, offset_z, own offset_x, own offset_y]
  std::array<double, 8> grad{};
};

template <class T>
CostGradResult cost_grad_impl(const MaskStack& stack, const Dims3& dims, const T* data,
                              const TransformParams& params, int stride, int threads,
                              bool want_grad) {
  const int width = stack.width(), height = stack.height();
  const double cu = center_offset(width), cv = center_offset(height);

  const Mat3 rot = rotation_matrix(params.rotation_x, params.rotation_y, params.rotation_z);
  const auto drot = rotation_matrix_derivatives(params.rotation_x, params.rotation_y,
                                                params.rotation_z);
  const Mat3 rot_t = rot.transposed();
  const std::array<Mat3, 3> drot_t = {drot[0].transposed(), drot[1].transposed(),
                                      drot[2].transposed()};

  const int sampled_rows = (height + stride - 1) / stride;
  const int blocks_per_slice = (sampled_rows + kRowsPerBlock - 1) / kRowsPerBlock;
  const std::size_t n_blocks = stack.count() * static_cast<std::size_t>(blocks_per_slice);
  std::vector<BlockResult> block_results(n_blocks);

  const std::size_t pixels_per_slice =
      static_cast<std::size_t>(sampled_rows) * static_cast<std::size_t>((width + stride - 1) / stride);
  const std::size_t n_total = pixels_per_slice * stack.count();

  parallel_blocks(n_blocks, threads, [&](std::size_t block) {
    const std::size_t k = block / static_cast<std::size_t>(blocks_per_slice);
    const int row_group = static_cast<int>(block % static_cast<std::size_t>(blocks_per_slice));
    const Mask2& mask = stack.masks[k];
    const double idx = static_cast<double>(stack.slice_indices[k]);
    const auto& off = params.per_slice_offsets[k];

    BlockResult& res = block_results[block];
    const int row_begin = row_group * kRowsPerBlock;
    const int row_end = std::min(sampled_rows, row_begin + kRowsPerBlock);
    for (int r = row_begin; r < row_end; ++r) {
      const int py = r * stride;
      const double v = py - cv;
      for (int px = 0; px < width; px += stride) {
        const double u = px - cu;
        const Vec3 w{off[0] + params.scaling * u, off[1] + params.scaling * v,
                     params.offset_z + params.spacing * idx};
        const Vec3 p = rot * w;
        const SampleGrad s = detail::trilinear_impl(dims, data, p);
        const double d = static_cast<double>(mask.at(px, py)) - s.value;
        res.cost += d * d;
        if (!want_grad) continue;
        const double common = -2.0 * d;
        const Vec3 gr = rot_t * s.grad;
        res.grad[0] += common * (drot_t[0] * s.grad).dot(w);
        res.grad[1] += common * (drot_t[1] * s.grad).dot(w);
        res.grad[2] += common * (drot_t[2] * s.grad).dot(w);
        res.grad[3] += common * (gr.x * u + gr.y * v);
        res.grad[4] += common * gr.z * idx;
        res.grad[5] += common * gr.z;
        res.grad[6] += common * gr.x;
        res.grad[7] += common * gr.y;
      }
    }
  });

  CostGradResult out;
  if (want_grad) out.gradient.assign(6 + 2 * stack.count(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(n_total);
  for (std::size_t block = 0; block < n_blocks; ++block) {
    const BlockResult& res = block_results[block];
    out.cost += res.cost;
    if (!want_grad) continue;
    const std::size_t k = block / static_cast<std::size_t>(blocks_per_slice);
    for (int j = 0; j < 6; ++j) out.gradient[static_cast<std::size_t>(j)] += res.grad[static_cast<std::size_t>(j)];
    out.gradient[6 + 2 * k] += res.grad[6];
    out.gradient[7 + 2 * k] += res.grad[7];
  }
  out.cost *= inv_n;
  for (auto& g : out.gradient) g *= inv_n;
  return out;
}

template <class Vol>
OptimTrace optimize_impl(const MaskStack& stack, const Vol& ct, const TransformParams& initial,
                         const OptimConfig& cfg, bool freeze_spacing) {
  const std::size_t n = stack.count();
  std::vector<double> lr{cfg.lr_rotation, cfg.lr_rotation, cfg.lr_rotation,
                         cfg.lr_scaling,  freeze_spacing ? 0.0 : cfg.lr_spacing,
                         cfg.lr_offset_z};
  for (std::size_t k = 0; k < n; ++k) {
    lr.push_back(cfg.lr_offset_xy);
    lr.push_back(cfg.lr_offset_xy);
  }

  auto cost_grad = [&](const std::vector<double>& x, std::vector<double>& g) -> double {
    const TransformParams p = params_from_vector(x, n);
    CostGradResult r = cost_grad_impl(stack, ct.dims, ct.data.data(), p, cfg.stride,
                                      cfg.threads, true);
    g = std::move(r.gradient);
    return r.cost;
  };

  MomentumSettings settings;
  settings.momentum = cfg.momentum;
  settings.stop_window = cfg.stop_window;
  settings.stop_tol = cfg.stop_tol;
  settings.max_iterations = cfg.max_iterations;

  VectorTrace vt = optimize_momentum(cost_grad, params_to_vector(initial), lr, settings);

  OptimTrace trace;
  trace.cost = std::move(vt.cost);
  trace.iterations = vt.iterations;
  trace.reason = vt.reason;
  trace.final_params = params_from_vector(vt.final_x, n);
  trace.diverged_iteration = vt.diverged_iteration;
  if (vt.reason == StopReason::diverged) {
    static const char* shared[] = {"rotation_x", "rotation_y", "rotation_z",
                                   "scaling",    "spacing",    "offset_z"};
    if (vt.diverged_component < 0)
      trace.diverged_param = "cost";
    else if (vt.diverged_component < 6)
      trace.diverged_param = shared[vt.diverged_component];
    else {
      const int k = (vt.diverged_component - 6) / 2;
      trace.diverged_param = std::string((vt.diverged_component - 6) % 2 == 0 ? "offset_x_"
                                                                              : "offset_y_") +
                             std::to_string(k);
    }
  }
  return trace;
}

}  // namespace

double mse_cost(const MaskStack& stack, const BinaryVolume& ct_mask,
                const TransformParams& params, int stride, int threads) {
  return cost_grad_impl(stack, ct_mask.dims, ct_mask.data.data(), params, stride, threads, false)
      .cost;
}

double mse_cost(const MaskStack& stack, const ScalarVolume& ct, const TransformParams& params,
                int stride, int threads) {
  return cost_grad_impl(stack, ct.dims, ct.data.data(), params, stride, threads, false).cost;
}

CostGradResult mse_cost_gradient(const MaskStack& stack, const BinaryVolume& ct_mask,
                                 const TransformParams& params, int stride, int threads) {
  return cost_grad_impl(stack, ct_mask.dims, ct_mask.data.data(), params, stride, threads, true);
}

CostGradResult mse_cost_gradient(const MaskStack& stack, const ScalarVolume& ct,
                                 const TransformParams& params, int stride, int threads) {
  return cost_grad_impl(stack, ct.dims, ct.data.data(), params, stride, threads, true);
}

OptimTrace optimize_joint(const MaskStack& stack, const BinaryVolume& ct_mask,
                          const TransformParams& initial, const OptimConfig& cfg) {
  if (cfg.smoothing_radius > 0) {
    const ScalarVolume smoothed = smooth_mask(ct_mask, cfg.smoothing_radius);
    return optimize_impl(stack, smoothed, initial, cfg, false);
  }
  return optimize_impl(stack, ct_mask, initial, cfg, false);
}

std::vector<OptimTrace> optimize_separate(const MaskStack& stack, const BinaryVolume& ct_mask,
                                          const TransformParams& initial, const OptimConfig& cfg) {
  std::vector<OptimTrace> traces;
  traces.reserve(stack.count());
  const std::vector<TransformParams> inits = split_joint(initial, stack);
  ScalarVolume smoothed;
  if (cfg.smoothing_radius > 0) smoothed = smooth_mask(ct_mask, cfg.smoothing_radius);
  for (std::size_t k = 0; k < stack.count(); ++k) {
    MaskStack single;
    single.masks.push_back(stack.masks[k]);
    single.slice_indices.push_back(0);
    if (cfg.smoothing_radius > 0)
      traces.push_back(optimize_impl(single, smoothed, inits[k], cfg, true));
    else
      traces.push_back(optimize_impl(single, ct_mask, inits[k], cfg, true));
  }
  return traces;
}

std::vector<TransformParams> split_joint(const TransformParams& params, const MaskStack& stack) {
  std::vector<TransformParams> out;
  out.reserve(stack.count());
  for (std::size_t k = 0; k < stack.count(); ++k) {
    TransformParams p = params;
    p.per_slice_offsets = {params.per_slice_offsets[k]};
    p.offset_z = params.offset_z + params.spacing * stack.slice_indices[k];
    out.push_back(std::move(p));
  }
  return out;
}

ScalarVolume smooth_mask(const BinaryVolume& mask, int radius) {
  ScalarVolume vol(mask.dims, mask.voxel_size);
  for (std::size_t i = 0; i < mask.data.size(); ++i)
    vol.data[i] = static_cast<float>(mask.data[i]);
  // Three box passes per axis approximate a Gaussian.
  const int n[3] = {mask.dims.nx, mask.dims.ny, mask.dims.nz};
  std::vector<float> tmp(vol.data.size());
  for (int pass = 0; pass < 3; ++pass) {
    for (int axis = 0; axis < 3; ++axis) {
      const std::size_t stride_v[3] = {
          1, static_cast<std::size_t>(n[0]),
          static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1])};
      const int len = n[axis];
      const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
      for (int j = 0; j < n[a2]; ++j)
        for (int i = 0; i < n[a1]; ++i) {
          const std::size_t base = stride_v[a1] * static_cast<std::size_t>(i) +
                                   stride_v[a2] * static_cast<std::size_t>(j);
          for (int k = 0; k < len; ++k) {
            double s = 0.0;
            int cnt = 0;
            for (int w = std::max(0, k - radius); w <= std::min(len - 1, k + radius); ++w) {
              s += vol.data[base + stride_v[axis] * w];
              ++cnt;
            }
            tmp[base + stride_v[axis] * k] = static_cast<float>(s / cnt);
          }
        }
      vol.data.swap(tmp);
    }
  }
  return vol;
}

}  // namespace slicereg
