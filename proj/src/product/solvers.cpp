#include "cyclex/product.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace cyclex {
namespace {

void check_tuple(const Family& family, const ProductPoint& y) {
  if (y.size() != family.size()) {
    throw BlockCountMismatch("expected " + std::to_string(family.size()) + " blocks, got " +
                             std::to_string(y.size()));
  }
  for (const auto& b : y) {
    if (static_cast<std::size_t>(b.size()) != family.dim()) {
      throw DimensionMismatch(family.dim(), b.size());
    }
    if (!all_finite(b)) throw NonFiniteInput("product point has non-finite coordinates");
  }
}

Vector block_mean(const ProductPoint& y) {
  Vector s = Vector::Zero(y.front().size());
  for (const auto& b : y) s += b;
  return s / static_cast<double>(y.size());
}

double max_block_distance(const ProductPoint& a, const ProductPoint& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, (a[i] - b[i]).norm());
  return r;
}

/// Shared driver: `inputs` maps x_n to the points handed to the blockwise
/// projector; `relax` blends x_n with the projected points.
struct Engine {
  std::function<void(const ProductPoint&, ProductPoint&)> inputs;
  std::function<double(std::size_t)> relaxation;
  std::function<double(const ProductPoint&)> objective;
};

ProductResult run_engine(const Family& family, const ProductPoint& x0, const SolverConfig& cfg,
                         const Engine& engine, const char* name) {
  if (cfg.max_iters == 0) throw Error("max_iters must be at least 1");
  const std::size_t m = family.size();
  ProductResult result;
  ProductPoint x = x0;
  ProductPoint in(m), projected(m);
  double displacement = 0.0;

  for (std::size_t n = 0;; ++n) {
    engine.inputs(x, in);
    project_blocks(family, in, projected, cfg.backend);
    const double stationarity = product_norm(product_difference(projected, x));
    result.stationarity = max_block_distance(x, projected);
    if (cfg.record) {
      result.log.push_back({n, engine.objective(x), displacement, stationarity, x});
    }
    result.iterations = n;
    if (n > 0 && displacement <= cfg.sweep_tol) {
      result.stop_reason = StopReason::converged;
      break;
    }
    if (n == cfg.max_iters) break;

    const double lambda = engine.relaxation(n);
    ProductPoint next(m);
    for (std::size_t i = 0; i < m; ++i) next[i] = x[i] + lambda * (projected[i] - x[i]);
    displacement = product_norm(product_difference(next, x));
    x = std::move(next);
  }

  result.objective = engine.objective(x);
  result.solution = std::move(x);
  if (result.stop_reason != StopReason::converged) {
    throw ProductNotConverged(std::string(name) + " hit max_iters=" +
                                  std::to_string(cfg.max_iters) + " (last displacement " +
                                  std::to_string(displacement) + ")",
                              std::move(result));
  }
  if (result.stationarity > cfg.fixpoint_tol) {
    throw ProductNotConverged(std::string(name) + " limit fails the stationarity check (" +
                                  std::to_string(result.stationarity) + " > fixpoint_tol)",
                              std::move(result));
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!contains(family[i], result.solution[i], cfg.cycle_tol)) {
      throw ProductNotConverged(std::string(name) + " limit block " + std::to_string(i) +
                                    " lies outside its set",
                                std::move(result));
    }
  }
  return result;
}

}  // namespace

RelaxationSchedule RelaxationSchedule::constant(double lambda) {
  RelaxationSchedule s;
  s.at = [lambda](std::size_t) { return lambda; };
  s.label = "constant(" + std::to_string(lambda) + ")";
  return s;
}

const char* to_string(ParallelVariant variant) {
  return variant == ParallelVariant::others_mean ? "others_mean" : "full_mean";
}

double relaxation_bound(double beta, double gamma) { return std::min(1.0, beta / gamma) + 0.5; }

ProductResult solve_theorem31(const Family& family, const SmoothObjective& obj,
                              const ProductPoint& x0, const SolverConfig& cfg) {
  check_tuple(family, x0);
  if (obj.blocks() != family.size()) {
    throw BlockCountMismatch("objective has " + std::to_string(obj.blocks()) +
                             " blocks for a family of " + std::to_string(family.size()));
  }
  if (obj.kind() == ObjectiveKind::quadratic_to_target) check_tuple(family, obj.target());

  const double beta = obj.beta();
  const double gamma = cfg.gamma > 0.0 ? cfg.gamma : beta;
  if (!(gamma > 0.0 && gamma < 2.0 * beta)) {
    throw InvalidStepSize("gamma=" + std::to_string(gamma) + " outside ]0, 2beta[ with 2beta=" +
                          std::to_string(2.0 * beta));
  }
  const double delta = relaxation_bound(beta, gamma);

  Engine engine;
  engine.inputs = [&](const ProductPoint& x, ProductPoint& in) {
    const ProductPoint g = grad_objective(obj, x);
    for (std::size_t i = 0; i < x.size(); ++i) in[i] = x[i] - gamma * g[i];
  };
  engine.relaxation = [&](std::size_t n) {
    const double lambda = cfg.lambda.at(n);
    if (!(lambda >= 0.0 && lambda <= delta)) {
      throw InvalidRelaxation("lambda_" + std::to_string(n) + "=" + std::to_string(lambda) +
                              " outside [0, delta] with delta=" + std::to_string(delta));
    }
    return lambda;
  };
  engine.objective = [&](const ProductPoint& x) { return eval_objective(obj, x); };
  return run_engine(family, x0, cfg, engine, "solve_theorem31");
}

ParallelResult solve_parallel(const Family& family, const ProductPoint& x0,
                              const SolverConfig& cfg, ParallelVariant variant) {
  check_tuple(family, x0);
  const std::size_t m = family.size();
  if (variant == ParallelVariant::others_mean && m < 3) {
    throw TooFewSets("others_mean needs at least three sets (got " + std::to_string(m) + ")");
  }
  const SmoothObjective pairwise = SmoothObjective::pairwise_squared(m);

  Engine engine;
  engine.inputs = [&](const ProductPoint& x, ProductPoint& in) {
    Vector total = Vector::Zero(family.dim());
    for (const auto& b : x) total += b;
    if (variant == ParallelVariant::others_mean) {
      const double inv = 1.0 / static_cast<double>(m - 1);
      for (std::size_t i = 0; i < m; ++i) in[i] = inv * (total - x[i]);
    } else {
      const Vector mean = total / static_cast<double>(m);
      for (std::size_t i = 0; i < m; ++i) in[i] = mean;
    }
  };
  engine.relaxation = [](std::size_t) { return 1.0; };
  engine.objective = [&](const ProductPoint& x) { return eval_objective(pairwise, x); };

  ParallelResult out;
  static_cast<ProductResult&>(out) = run_engine(family, x0, cfg, engine, "solve_parallel");
  out.fair_point = block_mean(out.solution);
  return out;
}

double fair_point_residual(const Family& family, const Vector& y) {
  if (static_cast<std::size_t>(y.size()) != family.dim()) {
    throw DimensionMismatch(family.dim(), y.size());
  }
  Vector mean = Vector::Zero(y.size());
  for (const auto& set : family.sets()) mean += project(set, y);
  mean /= static_cast<double>(family.size());
  return (y - mean).norm();
}

ProductPoint diagonal_projection(const ProductPoint& y) {
  if (y.empty()) return {};
  return replicate(block_mean(y), y.size());
}

std::pair<double, double> fixpoint_check(const Family& family, const ProductPoint& tuple) {
  check_tuple(family, tuple);
  const std::size_t m = family.size();
  auto project_product = [&](const ProductPoint& y) {
    ProductPoint out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = project(family[i], y[i]);
    return out;
  };
  const double r1 =
      product_norm(product_difference(tuple, project_product(diagonal_projection(tuple))));
  const ProductPoint z = diagonal_projection(tuple);
  const double r2 = product_norm(product_difference(z, diagonal_projection(project_product(z))));
  return {r1, r2};
}

}  // namespace cyclex
