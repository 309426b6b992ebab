#pragma once

#include "cyclex/geometry.hpp"
#include "cyclex/product.hpp"
#include "cyclex/solver_config.hpp"
#include "cyclex/sweep.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cyclex {

// ---------------------------------------------------------------------------
// Polygonal spiral

struct SpiralSpec {
  /// Inner target, nonzero, strictly shorter than `y`.
  Vector x;
  /// Outer starting point.
  Vector y;
  std::size_t n = 3;
  /// Second spanning direction of the working plane; consulted only when x
  /// and y are antipodal, where the plane is otherwise undetermined.
  std::optional<Vector> plane_hint;
};

struct SpiralResult {
  /// x_{n,0} = y, ..., x_{n,n} (collinear with x).
  std::vector<Vector> points;
  double final_norm = 0.0;
  /// Angle between x and y, in [0, pi].
  double alpha = 0.0;
  /// Unit directions of the rays R_{n,1}, ..., R_{n,n}.
  std::vector<Vector> rays;
};

/// Successive projections of y onto n angularly equispaced rays sweeping from
/// the ray through y to the ray through x. Each step shrinks the norm by
/// cos(alpha/n).
SpiralResult spiral(const SpiralSpec& spec);

// ---------------------------------------------------------------------------
// Degenerate families ({0}, ..., {0}, [-z, z], {+-rho z})

struct DegenerateFamilies {
  Family plus;
  Family minus;
  /// (0, ..., 0, z, rho z) and (0, ..., 0, -z, -rho z).
  std::vector<Vector> cycle_plus;
  std::vector<Vector> cycle_minus;
  double residual_plus = 0.0;
  double residual_minus = 0.0;
  /// Largest blockwise deviation of run_periodic (random starts) from the
  /// closed-form cycles.
  double max_run_deviation = 0.0;
  bool verified = false;
};

inline constexpr std::size_t kVerificationStarts = 5;
inline constexpr double kRunAgreementTol = 1e-10;

DegenerateFamilies thm23_families(std::size_t m, const Vector& z, double rho,
                                  std::uint64_t seed = 0);

/// Deterministic unit vector orthogonal to the unit vector z (d >= 2): swap
/// the first nonzero coordinate of z with the lowest other index, negate one,
/// then orthonormalize against z.
Vector orthogonal_completion(const Vector& z);

// ---------------------------------------------------------------------------
// Candidate functionals and the falsifier

struct CandidateFunctional {
  std::function<double(std::span<const Vector>)> evaluator;
  std::string label;
};

namespace candidates {
/// sum_i ||y_i - y_{i+1}||, cyclic.
CandidateFunctional perimeter();
/// sum_i ||y_i - y_{i+1}||^2, cyclic.
CandidateFunctional cyclic_squared();
/// 1/(2(m-1)) sum_{i<j} ||y_i - y_j||^2.
CandidateFunctional pairwise_squared();
CandidateFunctional constant(double value = 0.0);
/// sqrt(sum_i ||y_i||^2).
CandidateFunctional tuple_norm();

/// perimeter | cyclic2 | pairwise2 | constant | tuple_norm
CandidateFunctional builtin(const std::string& name);
std::vector<std::string> builtin_names();
}  // namespace candidates

struct LinkCheck {
  std::string name;
  bool holds = false;
  /// Size of the violation (0 when the link holds).
  double gap = 0.0;
};

inline constexpr const char* kVerdictFalsified = "candidate falsified";
inline constexpr const char* kVerdictLoopSatisfied =
    "loop satisfied (contradiction \xE2\x80\x94 check evaluator)";

struct FalsificationReport {
  std::string candidate;
  /// Candidate at (0..0, z, rho z), (0..0, -z, rho z), (0..0, -z, -rho z),
  /// (0..0, z, -rho z).
  std::array<double, 4> chain{};
  /// strict-1, equality-1, strict-2, equality-2 in loop order.
  std::vector<LinkCheck> links;
  std::string violated_link;
  double gap = 0.0;
  std::string verdict;

  bool falsified() const { return verdict == kVerdictFalsified; }
};

/// Relative slack used for the strict and equality links.
inline constexpr double kLinkTolerance = 1e-12;

FalsificationReport falsify_candidate(const CandidateFunctional& candidate, std::size_t m,
                                      const Vector& z, double rho, std::size_t sphere_samples,
                                      std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Cycle vs. smooth-candidate minimizer

struct CandidateGap {
  Cycle cycle;
  ProductPoint minimizer;
  /// candidate(cycle) - candidate(minimizer).
  double gap = 0.0;
  /// max_i ||cycle_i - minimizer_i||.
  double displacement = 0.0;
};

/// Runs periodic projections from x0 and the relaxed projected-gradient
/// minimization of the smooth candidate (starting from x0 in every block)
/// and compares them. `cfg` drives the periodic run; the minimization uses
/// the same tolerances with cfg.gamma (default beta).
CandidateGap candidate_gap(const Family& family, ObjectiveKind candidate_kind, const Vector& x0,
                           const SolverConfig& cfg);

}  // namespace cyclex
