#pragma once

#include "cyclex/kernels.hpp"

#include <cstddef>
#include <functional>
#include <string>

namespace cyclex {

/// Central table of numerical defaults.
namespace defaults {
inline constexpr double kSweepTol = 1e-12;         // periodic sweeps
inline constexpr double kProductSweepTol = 1e-11;  // product-space solvers
inline constexpr double kCycleTol = 1e-9;
inline constexpr double kFixpointTol = 1e-8;
inline constexpr std::size_t kMaxSweeps = 100000;
inline constexpr std::size_t kMaxIters = 100000;
}  // namespace defaults

/// Relaxation sequence (lambda_n). Values are checked against [0, delta] by
/// the solver at every iteration.
struct RelaxationSchedule {
  std::function<double(std::size_t)> at = [](std::size_t) { return 1.0; };
  std::string label = "constant(1)";

  static RelaxationSchedule constant(double lambda);
};

struct SolverConfig {
  /// Step size; a value <= 0 selects the default gamma = beta.
  double gamma = 0.0;
  RelaxationSchedule lambda;
  double sweep_tol = defaults::kSweepTol;
  double cycle_tol = defaults::kCycleTol;
  double fixpoint_tol = defaults::kFixpointTol;
  std::size_t max_sweeps = defaults::kMaxSweeps;
  std::size_t max_iters = defaults::kMaxIters;
  Backend backend = Backend::openmp;
  /// Keep the full trajectory / iteration log (disable for long runs).
  bool record = true;

  static SolverConfig product_defaults() {
    SolverConfig cfg;
    cfg.sweep_tol = defaults::kProductSweepTol;
    return cfg;
  }
};

}  // namespace cyclex
