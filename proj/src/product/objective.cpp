#include "cyclex/product.hpp"

#include <string>

namespace cyclex {
namespace {

void check_blocks(const SmoothObjective& obj, const ProductPoint& y) {
  if (y.size() != obj.blocks()) {
    throw BlockCountMismatch("objective expects " + std::to_string(obj.blocks()) +
                             " blocks, got " + std::to_string(y.size()));
  }
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (y[i].size() != y[0].size()) throw DimensionMismatch(y[0].size(), y[i].size());
  }
}

Vector block_sum(const ProductPoint& y) {
  Vector s = Vector::Zero(y.front().size());
  for (const auto& b : y) s += b;
  return s;
}

}  // namespace

const char* to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::pairwise_squared: return "pairwise_squared";
    case ObjectiveKind::cyclic_squared: return "cyclic_squared";
    case ObjectiveKind::quadratic_to_target: return "quadratic_to_target";
  }
  return "unknown";
}

SmoothObjective SmoothObjective::pairwise_squared(std::size_t m) {
  if (m < 2) throw BlockCountMismatch("pairwise objective needs at least two blocks");
  const double md = static_cast<double>(m);
  return SmoothObjective(ObjectiveKind::pairwise_squared, m, md / (md - 1.0));
}

SmoothObjective SmoothObjective::cyclic_squared(std::size_t m) {
  if (m < 2) throw BlockCountMismatch("cyclic objective needs at least two blocks");
  return SmoothObjective(ObjectiveKind::cyclic_squared, m, 8.0);
}

SmoothObjective SmoothObjective::quadratic_to_target(ProductPoint target) {
  if (target.empty()) throw BlockCountMismatch("quadratic objective needs a target");
  const std::size_t m = target.size();
  return SmoothObjective(ObjectiveKind::quadratic_to_target, m, 1.0, std::move(target));
}

double eval_objective(const SmoothObjective& obj, const ProductPoint& y) {
  check_blocks(obj, y);
  const std::size_t m = y.size();
  switch (obj.kind()) {
    case ObjectiveKind::pairwise_squared: {
      double sum = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) sum += (y[i] - y[j]).squaredNorm();
      return sum / (2.0 * static_cast<double>(m - 1));
    }
    case ObjectiveKind::cyclic_squared: {
      double sum = 0.0;
      for (std::size_t i = 0; i < m; ++i) sum += (y[i] - y[(i + 1) % m]).squaredNorm();
      return sum;
    }
    case ObjectiveKind::quadratic_to_target: {
      double sum = 0.0;
      for (std::size_t i = 0; i < m; ++i) sum += (y[i] - obj.target()[i]).squaredNorm();
      return 0.5 * sum;
    }
  }
  return 0.0;
}

ProductPoint grad_objective(const SmoothObjective& obj, const ProductPoint& y) {
  check_blocks(obj, y);
  const std::size_t m = y.size();
  ProductPoint g(m);
  switch (obj.kind()) {
    case ObjectiveKind::pairwise_squared: {
      const Vector total = block_sum(y);
      const double inv = 1.0 / static_cast<double>(m - 1);
      for (std::size_t i = 0; i < m; ++i) g[i] = y[i] - inv * (total - y[i]);
      break;
    }
    case ObjectiveKind::cyclic_squared:
      for (std::size_t i = 0; i < m; ++i) {
        const Vector& prev = y[(i + m - 1) % m];
        const Vector& next = y[(i + 1) % m];
        g[i] = 2.0 * (2.0 * y[i] - prev - next);
      }
      break;
    case ObjectiveKind::quadratic_to_target:
      for (std::size_t i = 0; i < m; ++i) g[i] = y[i] - obj.target()[i];
      break;
  }
  return g;
}

double product_norm(const ProductPoint& y) {
  double s = 0.0;
  for (const auto& b : y) s += b.squaredNorm();
  return std::sqrt(s);
}

ProductPoint product_difference(const ProductPoint& a, const ProductPoint& b) {
  if (a.size() != b.size()) throw BlockCountMismatch("block counts differ");
  ProductPoint d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

ProductPoint replicate(const Vector& x, std::size_t m) { return ProductPoint(m, x); }

}  // namespace cyclex
