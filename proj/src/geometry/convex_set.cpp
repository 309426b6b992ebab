#include "cyclex/geometry.hpp"

#include "cyclex/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cyclex {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_dim(const Vector& v, std::size_t dim, const char* what) {
  if (static_cast<std::size_t>(v.size()) != dim) {
    throw InvalidSet(std::string(what) + " has dimension " +
                     std::to_string(v.size()) + ", expected " +
                     std::to_string(dim));
  }
  if (!all_finite(v)) {
    throw InvalidSet(std::string(what) + " has non-finite coordinates");
  }
}

void require_finite_scalar(double s, const char* what) {
  if (!std::isfinite(s)) {
    throw InvalidSet(std::string(what) + " is not finite");
  }
}

std::size_t leading_dim(const ConvexSet::Variant& shape) {
  return std::visit(
      overloaded{
          [](const Singleton& s) { return std::size_t(s.point.size()); },
          [](const Segment& s) { return std::size_t(s.a.size()); },
          [](const Ray& s) { return std::size_t(s.direction.size()); },
          [](const Ball& s) { return std::size_t(s.center.size()); },
          [](const Box& s) { return std::size_t(s.lower.size()); },
          [](const Halfspace& s) { return std::size_t(s.normal.size()); },
          [](const AffineSubspace& s) { return std::size_t(s.anchor.size()); },
          [](const Ellipsoid& s) { return std::size_t(s.center.size()); },
      },
      shape);
}

void validate(const ConvexSet::Variant& shape, std::size_t dim) {
  if (dim == 0) throw InvalidSet("set dimension must be positive");
  std::visit(
      overloaded{
          [&](const Singleton& s) { require_dim(s.point, dim, "singleton point"); },
          [&](const Segment& s) {
            require_dim(s.a, dim, "segment endpoint a");
            require_dim(s.b, dim, "segment endpoint b");
          },
          [&](const Ray& s) {
            require_dim(s.direction, dim, "ray direction");
            if (s.direction.squaredNorm() == 0.0) {
              throw InvalidSet("ray direction must be nonzero");
            }
          },
          [&](const Ball& s) {
            require_dim(s.center, dim, "ball center");
            require_finite_scalar(s.radius, "ball radius");
            if (s.radius < 0.0) throw InvalidSet("ball radius must be >= 0");
          },
          [&](const Box& s) {
            require_dim(s.lower, dim, "box lower bound");
            require_dim(s.upper, dim, "box upper bound");
            if ((s.lower.array() > s.upper.array()).any()) {
              throw InvalidSet("box lower bound exceeds upper bound");
            }
          },
          [&](const Halfspace& s) {
            require_dim(s.normal, dim, "halfspace normal");
            require_finite_scalar(s.offset, "halfspace offset");
            if (s.normal.squaredNorm() == 0.0) {
              throw InvalidSet("halfspace normal must be nonzero");
            }
          },
          [&](const AffineSubspace& s) {
            require_dim(s.anchor, dim, "affine anchor");
            if (s.basis.size() > dim) {
              throw InvalidSet("affine basis has more vectors than the dimension");
            }
            for (std::size_t i = 0; i < s.basis.size(); ++i) {
              require_dim(s.basis[i], dim, "affine basis vector");
              for (std::size_t j = i; j < s.basis.size(); ++j) {
                const double target = i == j ? 1.0 : 0.0;
                if (std::abs(s.basis[i].dot(s.basis[j]) - target) > kBasisTolerance) {
                  throw InvalidSet("affine basis is not orthonormal");
                }
              }
            }
          },
          [&](const Ellipsoid& s) {
            require_dim(s.center, dim, "ellipsoid center");
            require_dim(s.axes, dim, "ellipsoid axes");
            if ((s.axes.array() <= 0.0).any()) {
              throw InvalidSet("ellipsoid axes must be positive");
            }
          },
      },
      shape);
}

Vector project_ellipsoid(const Ellipsoid& e, const Vector& x) {
  const Vector v = x - e.center;
  const Eigen::ArrayXd a2 = e.axes.array().square();
  if ((v.array().square() / a2).sum() <= 1.0) return x;

  // Secular equation F(t) = sum_j (a_j v_j / (a_j^2 + t))^2 - 1, decreasing
  // and convex on t >= 0 with F(0) > 0.
  const Eigen::ArrayXd av = e.axes.array() * v.array();
  auto secular = [&](double t, double& slope) {
    const Eigen::ArrayXd denom = a2 + t;
    const Eigen::ArrayXd q = av / denom;
    slope = -2.0 * (q.square() / denom).sum();
    return q.square().sum() - 1.0;
  };

  double lo = 0.0;
  double hi = v.norm() * e.axes.maxCoeff();
  double t = 0.0;
  bool solved = false;
  for (int iter = 0; iter < kEllipsoidMaxIterations; ++iter) {
    double slope = 0.0;
    const double f = secular(t, slope);
    if (std::abs(f) <= kEllipsoidTolerance) {
      solved = true;
      break;
    }
    if (f > 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      solved = true;
      break;
    }
    double next = slope < 0.0 ? t - f / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  if (!solved) {
    throw EllipsoidNewtonFailure("ellipsoid secular equation not solved within " +
                                 std::to_string(kEllipsoidMaxIterations) +
                                 " iterations");
  }
  return e.center + (a2 * v.array() / (a2 + t)).matrix();
}

}  // namespace

bool all_finite(const Vector& x) { return x.allFinite(); }

ConvexSet::ConvexSet(Variant shape) : shape_(std::move(shape)), dim_(leading_dim(shape_)) {
  validate(shape_, dim_);
}

ConvexSet ConvexSet::singleton(Vector point) { return ConvexSet(Singleton{std::move(point)}); }
ConvexSet ConvexSet::segment(Vector a, Vector b) {
  return ConvexSet(Segment{std::move(a), std::move(b)});
}
ConvexSet ConvexSet::ray(Vector direction) { return ConvexSet(Ray{std::move(direction)}); }
ConvexSet ConvexSet::ball(Vector center, double radius) {
  return ConvexSet(Ball{std::move(center), radius});
}
ConvexSet ConvexSet::box(Vector lower, Vector upper) {
  return ConvexSet(Box{std::move(lower), std::move(upper)});
}
ConvexSet ConvexSet::halfspace(Vector normal, double offset) {
  return ConvexSet(Halfspace{std::move(normal), offset});
}
ConvexSet ConvexSet::affine(Vector anchor, std::vector<Vector> basis) {
  return ConvexSet(AffineSubspace{std::move(anchor), std::move(basis)});
}
ConvexSet ConvexSet::ellipsoid(Vector center, Vector axes) {
  return ConvexSet(Ellipsoid{std::move(center), std::move(axes)});
}

ConvexSet ConvexSet::whole_space(std::size_t dim) {
  std::vector<Vector> basis;
  basis.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) basis.push_back(Vector::Unit(dim, i));
  return affine(Vector::Zero(dim), std::move(basis));
}

bool ConvexSet::bounded() const {
  return std::visit(overloaded{
                        [](const Ray&) { return false; },
                        [](const Halfspace&) { return false; },
                        [](const AffineSubspace& s) { return s.basis.empty(); },
                        [](const auto&) { return true; },
                    },
                    shape_);
}

const char* ConvexSet::type_name() const {
  return std::visit(overloaded{
                        [](const Singleton&) { return "singleton"; },
                        [](const Segment&) { return "segment"; },
                        [](const Ray&) { return "ray"; },
                        [](const Ball&) { return "ball"; },
                        [](const Box&) { return "box"; },
                        [](const Halfspace&) { return "halfspace"; },
                        [](const AffineSubspace&) { return "affine"; },
                        [](const Ellipsoid&) { return "ellipsoid"; },
                    },
                    shape_);
}

Vector project(const ConvexSet& set, const Vector& x) {
  if (static_cast<std::size_t>(x.size()) != set.dim()) {
    throw DimensionMismatch(set.dim(), x.size());
  }
  if (!all_finite(x)) throw NonFiniteInput("projection input has non-finite coordinates");

  return std::visit(
      overloaded{
          [](const Singleton& s) -> Vector { return s.point; },
          [&](const Segment& s) -> Vector {
            const Vector d = s.b - s.a;
            const double len2 = d.squaredNorm();
            if (len2 == 0.0) return s.a;
            const double t = (x - s.a).dot(d) / len2;
            if (t <= 0.0) return s.a;
            if (t >= 1.0) return s.b;
            return s.a + t * d;
          },
          [&](const Ray& s) -> Vector {
            const double along = x.dot(s.direction);
            if (along <= 0.0) return Vector::Zero(x.size());
            return (along / s.direction.squaredNorm()) * s.direction;
          },
          [&](const Ball& s) -> Vector {
            const Vector v = x - s.center;
            const double dist = v.norm();
            if (dist <= s.radius) return x;
            return s.center + (s.radius / dist) * v;
          },
          [&](const Box& s) -> Vector { return x.cwiseMax(s.lower).cwiseMin(s.upper); },
          [&](const Halfspace& s) -> Vector {
            const double excess = s.normal.dot(x) - s.offset;
            if (excess <= 0.0) return x;
            return x - (excess / s.normal.squaredNorm()) * s.normal;
          },
          [&](const AffineSubspace& s) -> Vector {
            const Vector v = x - s.anchor;
            Vector p = s.anchor;
            for (const auto& e : s.basis) p += v.dot(e) * e;
            return p;
          },
          [&](const Ellipsoid& s) -> Vector { return project_ellipsoid(s, x); },
      },
      set.shape());
}

Vector min_norm_point(const ConvexSet& set) { return project(set, Vector::Zero(set.dim())); }

bool contains(const ConvexSet& set, const Vector& x, double tol) {
  return (x - project(set, x)).norm() <= tol;
}

Family::Family(std::vector<ConvexSet> sets) : sets_(std::move(sets)), dim_(0) {
  if (sets_.size() < 2) throw InvalidSet("a family needs at least two sets");
  dim_ = sets_.front().dim();
  for (const auto& s : sets_) {
    if (s.dim() != dim_) throw DimensionMismatch(dim_, s.dim());
  }
}

bool Family::any_bounded() const {
  return std::any_of(sets_.begin(), sets_.end(), [](const ConvexSet& s) { return s.bounded(); });
}

}  // namespace cyclex
