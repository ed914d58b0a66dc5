#pragma once

#include <functional>
#include <string>
#include <vector>

namespace slicereg {

enum class StopReason { converged, max_iterations, diverged };

struct MomentumSettings {
  double momentum = 0.75;
  long stop_window = 1000;   // iterations in the cost-range stopping window
  double stop_tol = 1e-5;    // max-min of cost over the window
  long max_iterations = 200000;
};

struct VectorTrace {
  std::vector<double> cost;
  long iterations = 0;
  StopReason reason = StopReason::max_iterations;
  std::vector<double> final_x;
  long diverged_iteration = -1;
  int diverged_component = -1;
};

/// Gradient descent with momentum on a generic cost:
///   v <- momentum*v - lr (.) grad;  x <- x + v
/// Cost is recorded every iteration; the run stops once the last stop_window
/// costs span less than stop_tol (a constant cost therefore stops at exactly
/// stop_window iterations), at max_iterations, or when cost or parameters go
/// non-finite.
VectorTrace optimize_momentum(
    const std::function<double(const std::vector<double>&, std::vector<double>&)>& cost_grad,
    std::vector<double> x0, const std::vector<double>& learning_rates,
    const MomentumSettings& settings);

}  // namespace slicereg
