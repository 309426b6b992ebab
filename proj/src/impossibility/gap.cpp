#include "cyclex/impossibility.hpp"

#include "cyclex/errors.hpp"

#include <algorithm>

namespace cyclex {

CandidateGap candidate_gap(const Family& family, ObjectiveKind candidate_kind, const Vector& x0,
                           const SolverConfig& cfg) {
  const std::size_t m = family.size();
  SmoothObjective objective = [&] {
    switch (candidate_kind) {
      case ObjectiveKind::pairwise_squared: return SmoothObjective::pairwise_squared(m);
      case ObjectiveKind::cyclic_squared: return SmoothObjective::cyclic_squared(m);
      default: break;
    }
    throw Error("candidate_gap supports the pairwise and cyclic squared candidates only");
  }();

  CandidateGap out;
  out.cycle = run_periodic(family, x0, cfg).cycle;
  out.minimizer = solve_theorem31(family, objective, replicate(x0, m), cfg).solution;
  out.gap = eval_objective(objective, out.cycle.points) - eval_objective(objective, out.minimizer);
  for (std::size_t i = 0; i < m; ++i) {
    out.displacement = std::max(out.displacement, (out.cycle.points[i] - out.minimizer[i]).norm());
  }
  return out;
}

}  // namespace cyclex
