#include "slicereg/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace slicereg {

VectorTrace optimize_momentum(
    const std::function<double(const std::vector<double>&, std::vector<double>&)>& cost_grad,
    std::vector<double> x0, const std::vector<double>& learning_rates,
    const MomentumSettings& settings) {
  VectorTrace trace;
  std::vector<double> x = std::move(x0);
  std::vector<double> v(x.size(), 0.0);
  std::vector<double> g(x.size(), 0.0);
  trace.cost.reserve(static_cast<std::size_t>(std::min<long>(settings.max_iterations, 1 << 20)));

  for (long iter = 1; iter <= settings.max_iterations; ++iter) {
    const double cost = cost_grad(x, g);
    trace.cost.push_back(cost);
    trace.iterations = iter;

    if (!std::isfinite(cost)) {
      trace.reason = StopReason::diverged;
      trace.diverged_iteration = iter;
      trace.final_x = x;
      return trace;
    }

    if (iter >= settings.stop_window) {
      const auto first = trace.cost.end() - settings.stop_window;
      const auto [lo, hi] = std::minmax_element(first, trace.cost.end());
      if (*hi - *lo < settings.stop_tol) {
        trace.reason = StopReason::converged;
        trace.final_x = x;
        return trace;
      }
    }

    for (std::size_t k = 0; k < x.size(); ++k) {
      v[k] = settings.momentum * v[k] - learning_rates[k] * g[k];
      x[k] += v[k];
      if (!std::isfinite(x[k])) {
        trace.reason = StopReason::diverged;
        trace.diverged_iteration = iter;
        trace.diverged_component = static_cast<int>(k);
        trace.final_x = x;
        return trace;
      }
    }
  }
  trace.reason = StopReason::max_iterations;
  trace.final_x = x;
  return trace;
}

}  // namespace slicereg
