#pragma once

#include "cyclex/errors.hpp"
#include "cyclex/geometry.hpp"
#include "cyclex/solver_config.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cyclex {

enum class StopReason { converged, max_iterations };

const char* to_string(StopReason reason);

/// Application order of the projections within one sweep, as 0-based set
/// indices. The default order is m-1, m-2, ..., 0 (P_m first, P_1 last).
using Order = std::vector<std::size_t>;

Order default_order(std::size_t m);

struct SweepResult {
  Vector point;
  /// One entry per projection, in application order.
  std::vector<Vector> intermediates;
};

/// Applies one full sweep of projections. An empty `order` means the default.
SweepResult sweep_once(const Family& family, const Vector& x, std::span<const std::size_t> order = {});

/// max_i ||y_i - P_i y_{i+1}||, indices cyclic (y_{m+1} = y_1). Zero exactly on
/// cycles of the family.
double cycle_residual(const Family& family, std::span<const Vector> points);

/// An ordered m-tuple (y_1, ..., y_m) together with its recomputed residual.
struct Cycle {
  std::vector<Vector> points;
  double residual = 0.0;

  static Cycle from_points(const Family& family, std::vector<Vector> points);
};

struct TrajectoryEntry {
  std::size_t sweep;
  std::size_t inner;
  std::size_t set_index;
  Vector x;
};

struct Trajectory {
  std::vector<TrajectoryEntry> iterates;
  StopReason stop_reason = StopReason::max_iterations;
  std::size_t sweeps_used = 0;
};

struct PeriodicResult {
  Trajectory trajectory;
  Cycle cycle;
  /// ||x_{m(n+1)} - x_{mn}|| for the final sweep.
  double last_displacement = 0.0;
};

class PeriodicNotConverged : public NotConverged {
public:
  PeriodicNotConverged(const std::string& what, PeriodicResult result)
      : NotConverged(what), result_(std::move(result)) {}
  const PeriodicResult& result() const { return result_; }

private:
  PeriodicResult result_;
};

/// Periodic projections x <- P_{order[m-1]} ... P_{order[0]} x until the
/// full-sweep displacement drops to cfg.sweep_tol. The cycle reports, for
/// each i, the output of P_i during the last sweep. Throws
/// PeriodicNotConverged when the sweep budget runs out or the extracted tuple
/// fails cfg.cycle_tol.
PeriodicResult run_periodic(const Family& family, const Vector& x0, const SolverConfig& cfg,
                            std::span<const std::size_t> order = {});

struct DistancePair {
  Vector first;
  Vector second;
  double distance = 0.0;
  PeriodicResult run;
};

/// Alternating projections between two sets; the returned pair realizes the
/// minimal distance between them on convergence.
DistancePair min_distance_pair(const ConvexSet& c1, const ConvexSet& c2, const Vector& x0,
                               const SolverConfig& cfg);

}  // namespace cyclex
