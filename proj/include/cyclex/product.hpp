#pragma once

#include "cyclex/errors.hpp"
#include "cyclex/geometry.hpp"
#include "cyclex/solver_config.hpp"
#include "cyclex/sweep.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace cyclex {

/// Point (y_1, ..., y_m) of the product space, one block per set.
using ProductPoint = std::vector<Vector>;

double product_norm(const ProductPoint& y);
ProductPoint product_difference(const ProductPoint& a, const ProductPoint& b);

enum class ObjectiveKind { pairwise_squared, cyclic_squared, quadratic_to_target };

const char* to_string(ObjectiveKind kind);

/// Smooth convex objective on the product space with a known Lipschitz
/// constant 1/beta for its gradient.
///
///  - pairwise_squared:    1/(2(m-1)) * sum_{i<j} ||y_i - y_j||^2,  1/beta = m/(m-1)
///  - cyclic_squared:      sum_i ||y_i - y_{i+1}||^2 (cyclic),       1/beta = 8
///  - quadratic_to_target: 1/2 ||y - target||^2,                     1/beta = 1
class SmoothObjective {
public:
  static SmoothObjective pairwise_squared(std::size_t m);
  static SmoothObjective cyclic_squared(std::size_t m);
  static SmoothObjective quadratic_to_target(ProductPoint target);

  ObjectiveKind kind() const { return kind_; }
  std::size_t blocks() const { return m_; }
  double lipschitz_inverse_beta() const { return inv_beta_; }
  double beta() const { return 1.0 / inv_beta_; }
  const ProductPoint& target() const { return target_; }

private:
  SmoothObjective(ObjectiveKind kind, std::size_t m, double inv_beta, ProductPoint target = {})
      : kind_(kind), m_(m), inv_beta_(inv_beta), target_(std::move(target)) {}

  ObjectiveKind kind_;
  std::size_t m_;
  double inv_beta_;
  ProductPoint target_;
};

double eval_objective(const SmoothObjective& obj, const ProductPoint& y);
ProductPoint grad_objective(const SmoothObjective& obj, const ProductPoint& y);

struct IterationRecord {
  std::size_t iter;
  double objective;
  /// ||x_n - x_{n-1}|| in the product norm (0 for the starting point).
  double displacement;
  /// ||x_n - T(x_n)|| in the product norm, T being the solver's update map
  /// with lambda = 1.
  double stationarity;
  ProductPoint x;
};

struct ProductResult {
  ProductPoint solution;
  std::vector<IterationRecord> log;
  StopReason stop_reason = StopReason::max_iterations;
  std::size_t iterations = 0;
  double objective = 0.0;
  /// max_i ||x_i - T_i(x)|| at the returned point.
  double stationarity = 0.0;
};

class ProductNotConverged : public NotConverged {
public:
  ProductNotConverged(const std::string& what, ProductResult result)
      : NotConverged(what), result_(std::move(result)) {}
  const ProductResult& result() const { return result_; }

private:
  ProductResult result_;
};

/// delta = min{1, beta/gamma} + 1/2.
double relaxation_bound(double beta, double gamma);

/// Relaxed projected gradient over C_1 x ... x C_m:
///   x_{i,n+1} = x_{i,n} + lambda_n (P_i(x_{i,n} - gamma G_i(x_n)) - x_{i,n}).
/// cfg.gamma <= 0 selects gamma = beta. Block projections within an iteration
/// run through the configured kernel backend; the update is synchronous.
ProductResult solve_theorem31(const Family& family, const SmoothObjective& obj,
                              const ProductPoint& x0, const SolverConfig& cfg);

enum class ParallelVariant { others_mean, full_mean };

const char* to_string(ParallelVariant variant);

struct ParallelResult : ProductResult {
  /// (1/m) sum_i y_i.
  Vector fair_point;
};

/// Parallel projections onto the sets of averaged blocks:
///   others_mean: x_{i,n+1} = P_i( (1/(m-1)) sum_{j != i} x_{j,n} )   (m >= 3)
///   full_mean:   x_{i,n+1} = P_i( (1/m) sum_j x_{j,n} )
ParallelResult solve_parallel(const Family& family, const ProductPoint& x0,
                              const SolverConfig& cfg, ParallelVariant variant);

/// ||y - (1/m) sum_i P_i y||; zero exactly at stationary points of
/// y -> sum_i ||y - P_i y||^2.
double fair_point_residual(const Family& family, const Vector& y);

/// Diagonal projection: every block replaced by the block average.
ProductPoint diagonal_projection(const ProductPoint& y);

/// (||t - P_C P_D t||, ||z - P_D P_C z||) with z = P_D t.
std::pair<double, double> fixpoint_check(const Family& family, const ProductPoint& tuple);

ProductPoint replicate(const Vector& x, std::size_t m);

}  // namespace cyclex
