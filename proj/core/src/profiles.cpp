#include "slicereg/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slicereg/errors.hpp"
#include "slicereg/optimizer.hpp"

namespace slicereg {

AreaProfile photo_area_profile(const MaskStack& stack, const TransformParams& params) {
  AreaProfile profile;
  profile.points.reserve(stack.count());
  for (std::size_t k = 0; k < stack.count(); ++k) {
    const double i = static_cast<double>(stack.slice_indices[k]);
    const double a = std::sqrt(static_cast<double>(stack.masks[k].area())) * params.scaling;
    profile.points.push_back({a, params.offset_z + params.spacing * i});
  }
  return profile;
}

AreaProfile ct_area_profile(const BinaryVolume& mask) {
  AreaProfile profile;
  profile.points.reserve(static_cast<std::size_t>(mask.dims.nz));
  for (int j = 0; j < mask.dims.nz; ++j) {
    std::size_t area = 0;
    const std::size_t base = static_cast<std::size_t>(mask.dims.nx) * mask.dims.ny *
                             static_cast<std::size_t>(j);
    const std::size_t n = static_cast<std::size_t>(mask.dims.nx) * mask.dims.ny;
    for (std::size_t i = 0; i < n; ++i) area += mask.data[base + i];
    profile.points.push_back({std::sqrt(static_cast<double>(area)), static_cast<double>(j)});
  }
  return profile;
}

namespace {

std::size_t nearest_point(const Vec2& p, const std::vector<Vec2>& pts) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::max();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const double dx = p.x - pts[j].x, dy = p.y - pts[j].y;
    const double d = dx * dx + dy * dy;
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

}  // namespace

double profile_cost(const AreaProfile& photo, const AreaProfile& ct) {
  if (photo.points.empty() || ct.points.empty())
    throw DataError("profile_cost: empty area profile");
  double sum = 0.0;
  for (const auto& p : photo.points) {
    const auto& s = ct.points[nearest_point(p, ct.points)];
    const double dx = p.x - s.x, dy = p.y - s.y;
    sum += dx * dx + dy * dy;
  }
  return sum / static_cast<double>(photo.points.size());
}

TransformParams fit_profile_params(const MaskStack& stack, const BinaryVolume& ct_mask,
                                   const InitConfig& cfg) {
  const AreaProfile ct = ct_area_profile(ct_mask);

  std::vector<double> sqrt_area(stack.count());
  double photo_max = 0.0;
  for (std::size_t k = 0; k < stack.count(); ++k) {
    sqrt_area[k] = std::sqrt(static_cast<double>(stack.masks[k].area()));
    photo_max = std::max(photo_max, sqrt_area[k]);
  }
  if (photo_max <= 0.0) throw DataError("fit_profile_params: all photo masks are empty");

  double ct_max = 0.0;
  int z_min = -1, z_max = -1;
  for (int j = 0; j < ct_mask.dims.nz; ++j) {
    const double a = ct.points[static_cast<std::size_t>(j)].x;
    ct_max = std::max(ct_max, a);
    if (a > 0.0) {
      if (z_min < 0) z_min = j;
      z_max = j;
    }
  }
  if (z_min < 0) throw DataError("fit_profile_params: CT mask is empty");

  // Initial guesses put the two profiles in overlap so nearest-neighbor
  // gradients are informative.
  const double scaling0 = ct_max / photo_max;
  const double spacing0 =
      static_cast<double>(z_max - z_min + 1) / static_cast<double>(stack.count());
  const int first_index = stack.slice_indices.front();
  const double offset_z0 = static_cast<double>(z_min) - spacing0 * first_index;

  // The fit runs with z in CT slice-index units so the CT profile is exactly
  // [sqrt(A_CT(j)), j]; the fitted offset_z is shifted to centered coordinates
  // at the end.
  auto cost_grad = [&](const std::vector<double>& x, std::vector<double>& g) -> double {
    const double scaling = x[0], offset_z = x[1], spacing = x[2];
    const double n = static_cast<double>(stack.count());
    double cost = 0.0;
    g.assign(3, 0.0);
    for (std::size_t k = 0; k < stack.count(); ++k) {
      const double i = static_cast<double>(stack.slice_indices[k]);
      const Vec2 p{sqrt_area[k] * scaling, offset_z + spacing * i};
      const auto& s = ct.points[nearest_point(p, ct.points)];
      const double da = p.x - s.x, dz = p.y - s.y;
      cost += da * da + dz * dz;
      g[0] += 2.0 * da * sqrt_area[k];
      g[1] += 2.0 * dz;
      g[2] += 2.0 * dz * i;
    }
    for (auto& v : g) v /= n;
    return cost / n;
  };

  MomentumSettings settings;
  settings.momentum = cfg.momentum;
  settings.max_iterations = cfg.iterations;
  settings.stop_window = cfg.iterations + 1;  // fixed iteration count, no early stop
  const std::vector<double> lr{cfg.lr_scaling, cfg.lr_offset_z, cfg.lr_spacing};

  const VectorTrace trace =
      optimize_momentum(cost_grad, {scaling0, offset_z0, spacing0}, lr, settings);
  if (trace.reason == StopReason::diverged) {
    static const char* names[] = {"scaling", "offset_z", "spacing"};
    const char* which =
        trace.diverged_component >= 0 ? names[trace.diverged_component] : "cost";
    throw DivergenceError(std::string("fit_profile_params: non-finite ") + which,
                          trace.diverged_iteration);
  }

  TransformParams out;
  out.scaling = trace.final_x[0];
  out.offset_z = trace.final_x[1] - center_offset(ct_mask.dims.nz);
  out.spacing = trace.final_x[2];
  out.per_slice_offsets.assign(stack.count(), {0.0, 0.0});
  return out;
}

XYInitResult init_xy_offsets(const MaskStack& stack, const BinaryVolume& ct_mask,
                             const TransformParams& params) {
  XYInitResult result;
  result.params = params;
  result.params.per_slice_offsets.assign(stack.count(), {0.0, 0.0});

  const double cx = center_offset(ct_mask.dims.nx);
  const double cy = center_offset(ct_mask.dims.ny);
  const double cz = center_offset(ct_mask.dims.nz);
  const double pu = center_offset(stack.width());
  const double pv = center_offset(stack.height());

  for (std::size_t k = 0; k < stack.count(); ++k) {
    const int i = stack.slice_indices[k];
    const double z_index = params.offset_z + params.spacing * i + cz;
    const int zi = static_cast<int>(std::lround(z_index));
    if (zi < 0 || zi >= ct_mask.dims.nz) {
      result.warnings.push_back("slice " + std::to_string(i) +
                                " maps outside the CT z-support; offsets left at (0,0)");
      continue;
    }

    double sx = 0.0, sy = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < ct_mask.dims.ny; ++y)
      for (int x = 0; x < ct_mask.dims.nx; ++x)
        if (ct_mask.at(x, y, zi)) {
          sx += x;
          sy += y;
          ++n;
        }
    if (n == 0) {
      result.warnings.push_back("slice " + std::to_string(i) +
                                " maps onto an empty CT slice; offsets left at (0,0)");
      continue;
    }
    const double ct_com_x = sx / static_cast<double>(n) - cx;
    const double ct_com_y = sy / static_cast<double>(n) - cy;

    const Mask2& m = stack.masks[k];
    double mu = 0.0, mv = 0.0;
    std::size_t mn = 0;
    for (int y = 0; y < m.height; ++y)
      for (int x = 0; x < m.width; ++x)
        if (m.at(x, y)) {
          mu += x;
          mv += y;
          ++mn;
        }
    if (mn == 0) {
      result.warnings.push_back("photo slice " + std::to_string(i) +
                                " has an empty mask; offsets left at (0,0)");
      continue;
    }
    const double photo_com_u = mu / static_cast<double>(mn) - pu;
    const double photo_com_v = mv / static_cast<double>(mn) - pv;

    result.params.per_slice_offsets[k] = {ct_com_x - params.scaling * photo_com_u,
                                          ct_com_y - params.scaling * photo_com_v};
  }
  return result;
}

XYInitResult initialize_params(const MaskStack& stack, const BinaryVolume& ct_mask,
                               const InitConfig& cfg) {
  return init_xy_offsets(stack, ct_mask, fit_profile_params(stack, ct_mask, cfg));
}

}  // namespace slicereg
