#include "cyclex/impossibility.hpp"

#include "cyclex/errors.hpp"
#include "random.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cyclex {
namespace {

constexpr double kUnitTol = 1e-12;

Family degenerate_family(std::size_t m, const Vector& z, const Vector& tip) {
  std::vector<ConvexSet> sets;
  sets.reserve(m);
  for (std::size_t i = 0; i + 2 < m; ++i) sets.push_back(ConvexSet::singleton(Vector::Zero(z.size())));
  sets.push_back(ConvexSet::segment(-z, z));
  sets.push_back(ConvexSet::singleton(tip));
  return Family(std::move(sets));
}

std::vector<Vector> degenerate_cycle(std::size_t m, const Vector& z, double rho) {
  std::vector<Vector> pts(m, Vector::Zero(z.size()));
  pts[m - 2] = z;
  pts[m - 1] = rho * z;
  return pts;
}

double run_deviation(const Family& family, const std::vector<Vector>& exact,
                     std::mt19937_64& rng) {
  SolverConfig cfg;
  cfg.record = false;
  double worst = 0.0;
  for (std::size_t s = 0; s < kVerificationStarts; ++s) {
    Vector x0(family.dim());
    for (auto& c : x0) c = 20.0 * detail::unit_uniform(rng) - 10.0;
    const auto run = run_periodic(family, x0, cfg);
    for (std::size_t i = 0; i < exact.size(); ++i) {
      worst = std::max(worst, (run.cycle.points[i] - exact[i]).norm());
    }
  }
  return worst;
}

}  // namespace

DegenerateFamilies thm23_families(std::size_t m, const Vector& z, double rho,
                                  std::uint64_t seed) {
  if (m < 3) throw DegenerateInput("degenerate families need m >= 3");
  if (!all_finite(z) || std::abs(z.norm() - 1.0) > kUnitTol) {
    throw InvalidUnitVector("z must have unit norm");
  }
  if (!(rho > 1.0) || !std::isfinite(rho)) throw InvalidRho("rho must exceed 1");

  DegenerateFamilies out{degenerate_family(m, z, rho * z), degenerate_family(m, z, -rho * z),
                         degenerate_cycle(m, z, rho), degenerate_cycle(m, -z, rho)};
  out.residual_plus = cycle_residual(out.plus, out.cycle_plus);
  out.residual_minus = cycle_residual(out.minus, out.cycle_minus);

  std::mt19937_64 rng(seed);
  out.max_run_deviation = std::max(run_deviation(out.plus, out.cycle_plus, rng),
                                   run_deviation(out.minus, out.cycle_minus, rng));
  out.verified = out.residual_plus == 0.0 && out.residual_minus == 0.0 &&
                 out.max_run_deviation <= kRunAgreementTol;
  return out;
}

Vector orthogonal_completion(const Vector& z) {
  const auto d = z.size();
  if (d < 2) throw DegenerateInput("an orthogonal completion needs dimension >= 2");
  Eigen::Index i = 0;
  while (i < d && z[i] == 0.0) ++i;
  if (i == d) throw DegenerateInput("cannot complete the zero vector");
  const Eigen::Index j = i == 0 ? 1 : 0;
  Vector w = Vector::Zero(d);
  w[j] = z[i];
  w[i] = -z[j];
  w -= w.dot(z) / z.squaredNorm() * z;
  return w / w.norm();
}

}  // namespace cyclex
