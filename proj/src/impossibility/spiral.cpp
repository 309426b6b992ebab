#include "cyclex/impossibility.hpp"

#include "cyclex/errors.hpp"

#include <cmath>
#include <numbers>

namespace cyclex {
namespace {

constexpr double kCollinearTol = 1e-14;

}  // namespace

SpiralResult spiral(const SpiralSpec& spec) {
  const auto d = spec.y.size();
  if (spec.x.size() != d) throw DimensionMismatch(d, spec.x.size());
  if (!all_finite(spec.x) || !all_finite(spec.y)) {
    throw NonFiniteInput("spiral endpoints must be finite");
  }
  if (spec.n == 0) throw DegenerateInput("spiral needs at least one ray");
  const double x_norm = spec.x.norm();
  const double y_norm = spec.y.norm();
  if (x_norm == 0.0) throw DegenerateInput("spiral target x must be nonzero");
  if (!(x_norm < y_norm)) throw DegenerateInput("spiral requires ||x|| < ||y||");

  const Vector e1 = spec.y / y_norm;
  const Vector x_dir = spec.x / x_norm;
  Vector w = x_dir - x_dir.dot(e1) * e1;
  Vector e2 = Vector::Zero(d);
  double alpha = 0.0;

  if (w.norm() > kCollinearTol) {
    e2 = w / w.norm();
    alpha = std::atan2(x_dir.dot(e2), x_dir.dot(e1));
  } else if (x_dir.dot(e1) < 0.0) {
    alpha = std::numbers::pi;
    if (!spec.plane_hint || spec.plane_hint->size() != d) {
      throw AntipodalAmbiguity("x and y are antipodal; a plane hint is required");
    }
    w = *spec.plane_hint - spec.plane_hint->dot(e1) * e1;
    if (w.norm() <= kCollinearTol * std::max(1.0, spec.plane_hint->norm())) {
      throw AntipodalAmbiguity("plane hint is collinear with y");
    }
    e2 = w / w.norm();
  }

  SpiralResult out;
  out.alpha = alpha;
  out.points.reserve(spec.n + 1);
  out.rays.reserve(spec.n);
  out.points.push_back(spec.y);
  const double step = alpha / static_cast<double>(spec.n);
  for (std::size_t k = 1; k <= spec.n; ++k) {
    Vector u = k == spec.n ? x_dir
                           : Vector(std::cos(step * static_cast<double>(k)) * e1 +
                                    std::sin(step * static_cast<double>(k)) * e2);
    out.points.push_back(project(ConvexSet::ray(u), out.points.back()));
    out.rays.push_back(std::move(u));
  }
  out.final_norm = out.points.back().norm();
  return out;
}

}  // namespace cyclex
