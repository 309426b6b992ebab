#include "cyclex/sweep.hpp"

#include <algorithm>
#include <string>

namespace cyclex {
namespace {

Order resolve_order(std::size_t m, std::span<const std::size_t> order) {
  if (order.empty()) return default_order(m);
  if (order.size() != m) {
    throw LengthMismatch("sweep order has " + std::to_string(order.size()) +
                         " entries for a family of " + std::to_string(m));
  }
  Order sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < m; ++i) {
    if (sorted[i] != i) throw LengthMismatch("sweep order is not a permutation");
  }
  return Order(order.begin(), order.end());
}

void check_point(const Family& family, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != family.dim()) {
    throw DimensionMismatch(family.dim(), x.size());
  }
}

}  // namespace

const char* to_string(StopReason reason) {
  return reason == StopReason::converged ? "converged" : "max_iterations";
}

Order default_order(std::size_t m) {
  Order order(m);
  for (std::size_t k = 0; k < m; ++k) order[k] = m - 1 - k;
  return order;
}

SweepResult sweep_once(const Family& family, const Vector& x, std::span<const std::size_t> order) {
  check_point(family, x);
  const Order resolved = resolve_order(family.size(), order);
  SweepResult out;
  out.intermediates.reserve(resolved.size());
  Vector current = x;
  for (std::size_t idx : resolved) {
    current = project(family[idx], current);
    out.intermediates.push_back(current);
  }
  out.point = std::move(current);
  return out;
}

double cycle_residual(const Family& family, std::span<const Vector> points) {
  const std::size_t m = family.size();
  if (points.size() != m) {
    throw LengthMismatch("cycle has " + std::to_string(points.size()) + " points for " +
                         std::to_string(m) + " sets");
  }
  for (const auto& p : points) check_point(family, p);
  double residual = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Vector& next = points[(i + 1) % m];
    residual = std::max(residual, (points[i] - project(family[i], next)).norm());
  }
  return residual;
}

Cycle Cycle::from_points(const Family& family, std::vector<Vector> points) {
  Cycle c;
  c.residual = cycle_residual(family, points);
  c.points = std::move(points);
  return c;
}

PeriodicResult run_periodic(const Family& family, const Vector& x0, const SolverConfig& cfg,
                            std::span<const std::size_t> order) {
  check_point(family, x0);
  if (cfg.max_sweeps == 0) throw Error("max_sweeps must be at least 1");
  if (!(cfg.cycle_tol > 0.0)) throw Error("cycle_tol must be positive");
  const std::size_t m = family.size();
  const Order resolved = resolve_order(m, order);

  PeriodicResult result;
  Vector x = x0;
  std::vector<Vector> by_set(m);
  for (std::size_t n = 0; n < cfg.max_sweeps; ++n) {
    const Vector start = x;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t idx = resolved[k];
      x = project(family[idx], x);
      by_set[idx] = x;
      if (cfg.record) result.trajectory.iterates.push_back({n, k, idx, x});
    }
    result.trajectory.sweeps_used = n + 1;
    result.last_displacement = (x - start).norm();
    if (result.last_displacement <= cfg.sweep_tol) {
      result.trajectory.stop_reason = StopReason::converged;
      break;
    }
  }

  result.cycle = Cycle::from_points(family, by_set);
  if (result.trajectory.stop_reason != StopReason::converged) {
    throw PeriodicNotConverged("periodic projections hit max_sweeps=" +
                                   std::to_string(cfg.max_sweeps) +
                                   " (last displacement " +
                                   std::to_string(result.last_displacement) + ")",
                               std::move(result));
  }
  if (result.cycle.residual > cfg.cycle_tol) {
    throw PeriodicNotConverged("extracted tuple has cycle residual " +
                                   std::to_string(result.cycle.residual) +
                                   " above cycle_tol",
                               std::move(result));
  }
  return result;
}

DistancePair min_distance_pair(const ConvexSet& c1, const ConvexSet& c2, const Vector& x0,
                               const SolverConfig& cfg) {
  const Family family({c1, c2});
  DistancePair out;
  out.run = run_periodic(family, x0, cfg);
  out.first = out.run.cycle.points[0];
  out.second = out.run.cycle.points[1];
  out.distance = (out.first - out.second).norm();
  return out;
}

}  // namespace cyclex
