#include "cyclex/impossibility.hpp"

#include "cyclex/errors.hpp"
#include "random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace cyclex {

namespace candidates {

CandidateFunctional perimeter() {
  return {[](std::span<const Vector> y) {
            double sum = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i) sum += (y[i] - y[(i + 1) % y.size()]).norm();
            return sum;
          },
          "perimeter"};
}

CandidateFunctional cyclic_squared() {
  return {[](std::span<const Vector> y) {
            double sum = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i) {
              sum += (y[i] - y[(i + 1) % y.size()]).squaredNorm();
            }
            return sum;
          },
          "cyclic2"};
}

CandidateFunctional pairwise_squared() {
  return {[](std::span<const Vector> y) {
            double sum = 0.0;
            for (std::size_t i = 0; i < y.size(); ++i)
              for (std::size_t j = i + 1; j < y.size(); ++j) sum += (y[i] - y[j]).squaredNorm();
            return sum / (2.0 * static_cast<double>(y.size() - 1));
          },
          "pairwise2"};
}

CandidateFunctional constant(double value) {
  return {[value](std::span<const Vector>) { return value; }, "constant"};
}

CandidateFunctional tuple_norm() {
  return {[](std::span<const Vector> y) {
            double sum = 0.0;
            for (const auto& b : y) sum += b.squaredNorm();
            return std::sqrt(sum);
          },
          "tuple_norm"};
}

std::vector<std::string> builtin_names() {
  return {"perimeter", "cyclic2", "pairwise2", "constant", "tuple_norm"};
}

CandidateFunctional builtin(const std::string& name) {
  if (name == "perimeter") return perimeter();
  if (name == "cyclic2") return cyclic_squared();
  if (name == "pairwise2") return pairwise_squared();
  if (name == "constant") return constant();
  if (name == "tuple_norm") return tuple_norm();
  throw Error("unknown candidate '" + name + "'");
}

}  // namespace candidates

namespace {

std::vector<Vector> loop_tuple(std::size_t m, const Vector& second_last, const Vector& last) {
  std::vector<Vector> y(m, Vector::Zero(last.size()));
  y[m - 2] = second_last;
  y[m - 1] = last;
  return y;
}

double scale_of(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

// lhs < rhs with relative slack; the gap is how far rhs falls short.
LinkCheck strict_link(const char* name, double lhs, double rhs) {
  const bool holds = rhs - lhs > kLinkTolerance * scale_of(lhs, rhs);
  return {name, holds, holds ? 0.0 : lhs - rhs};
}

// Constancy of the candidate on the sphere, probed at the two chain
// endpoints and at the sampled sphere values.
LinkCheck equality_link(const char* name, double a, double b, std::span<const double> probes) {
  const double endpoint_gap = std::abs(a - b);
  double lo = std::min(a, b), hi = std::max(a, b);
  for (double v : probes) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double tol = kLinkTolerance * scale_of(lo, hi);
  if (endpoint_gap > tol) return {name, false, endpoint_gap};
  if (hi - lo > tol) return {name, false, hi - lo};
  return {name, true, 0.0};
}

}  // namespace

FalsificationReport falsify_candidate(const CandidateFunctional& candidate, std::size_t m,
                                      const Vector& z, double rho, std::size_t sphere_samples,
                                      std::uint64_t seed) {
  if (m < 3) throw DegenerateInput("the falsification loop needs m >= 3");
  if (!all_finite(z) || std::abs(z.norm() - 1.0) > 1e-12) {
    throw InvalidUnitVector("z must have unit norm");
  }
  if (!(rho > 1.0) || !std::isfinite(rho)) throw InvalidRho("rho must exceed 1");
  if (sphere_samples < 2) throw Error("sphere_samples must be at least 2");
  if (!candidate.evaluator) throw Error("candidate has no evaluator");

  const auto& phi = candidate.evaluator;
  const Vector rz = rho * z;

  FalsificationReport report;
  report.candidate = candidate.label;
  report.chain = {phi(loop_tuple(m, z, rz)), phi(loop_tuple(m, -z, rz)),
                  phi(loop_tuple(m, -z, -rz)), phi(loop_tuple(m, z, -rz))};

  const Vector z_perp = orthogonal_completion(z);
  std::mt19937_64 rng(seed);
  std::vector<double> probes_minus, probes_plus;
  probes_minus.reserve(sphere_samples);
  probes_plus.reserve(sphere_samples);
  for (std::size_t s = 0; s < sphere_samples; ++s) {
    const double theta = 2.0 * std::numbers::pi * detail::unit_uniform(rng);
    const Vector point = rho * (std::cos(theta) * z + std::sin(theta) * z_perp);
    probes_minus.push_back(phi(loop_tuple(m, -z, point)));
    probes_plus.push_back(phi(loop_tuple(m, z, point)));
  }

  const auto& c = report.chain;
  report.links = {
      strict_link("strict-1", c[0], c[1]),
      equality_link("equality-1", c[1], c[2], probes_minus),
      strict_link("strict-2", c[2], c[3]),
      equality_link("equality-2", c[3], c[0], probes_plus),
  };

  const auto first = std::find_if(report.links.begin(), report.links.end(),
                                  [](const LinkCheck& l) { return !l.holds; });
  if (first != report.links.end()) {
    report.violated_link = first->name;
    report.gap = first->gap;
    report.verdict = kVerdictFalsified;
  } else {
    report.violated_link = "none";
    report.verdict = kVerdictLoopSatisfied;
  }
  return report;
}

}  // namespace cyclex
