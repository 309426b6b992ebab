#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace cyclex {

using Vector = Eigen::VectorXd;

/// Orthonormality tolerance for affine subspace bases.
inline constexpr double kBasisTolerance = 1e-12;
/// Residual target of the ellipsoid secular equation.
inline constexpr double kEllipsoidTolerance = 1e-13;
inline constexpr int kEllipsoidMaxIterations = 200;

struct Singleton {
  Vector point;
};

struct Segment {
  Vector a;
  Vector b;
};

/// Ray from the origin along `direction`.
struct Ray {
  Vector direction;
};

struct Ball {
  Vector center;
  double radius;
};

struct Box {
  Vector lower;
  Vector upper;
};

/// { x : <normal, x> <= offset }
struct Halfspace {
  Vector normal;
  double offset;
};

/// anchor + span(basis); basis vectors are orthonormal.
struct AffineSubspace {
  Vector anchor;
  std::vector<Vector> basis;
};

/// Axis-aligned ellipsoid { c + u : sum_j (u_j / axes_j)^2 <= 1 }.
struct Ellipsoid {
  Vector center;
  Vector axes;
};

/// A nonempty closed convex set with an exact projector. Immutable once built;
/// construction validates the variant's invariants and throws InvalidSet.
class ConvexSet {
public:
  using Variant = std::variant<Singleton, Segment, Ray, Ball, Box, Halfspace,
                               AffineSubspace, Ellipsoid>;

  explicit ConvexSet(Variant shape);

  static ConvexSet singleton(Vector point);
  static ConvexSet segment(Vector a, Vector b);
  static ConvexSet ray(Vector direction);
  static ConvexSet ball(Vector center, double radius);
  static ConvexSet box(Vector lower, Vector upper);
  static ConvexSet halfspace(Vector normal, double offset);
  static ConvexSet affine(Vector anchor, std::vector<Vector> basis);
  static ConvexSet ellipsoid(Vector center, Vector axes);
  /// The whole space R^dim, as an affine subspace with the identity basis.
  static ConvexSet whole_space(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const Variant& shape() const { return shape_; }
  bool bounded() const;
  const char* type_name() const;

private:
  Variant shape_;
  std::size_t dim_;
};

Vector project(const ConvexSet& set, const Vector& x);

/// Equivalent to project(set, 0).
Vector min_norm_point(const ConvexSet& set);

bool contains(const ConvexSet& set, const Vector& x, double tol);

/// Ordered family (C_1, ..., C_m), m >= 2, common dimension.
class Family {
public:
  explicit Family(std::vector<ConvexSet> sets);

  std::size_t size() const { return sets_.size(); }
  std::size_t dim() const { return dim_; }
  const ConvexSet& operator[](std::size_t i) const { return sets_[i]; }
  std::span<const ConvexSet> sets() const { return sets_; }
  bool any_bounded() const;

private:
  std::vector<ConvexSet> sets_;
  std::size_t dim_;
};

bool all_finite(const Vector& x);

}  // namespace cyclex
