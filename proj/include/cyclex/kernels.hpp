#pragma once

#include "cyclex/geometry.hpp"

#include <span>

namespace cyclex {

/// Execution backend for the data-parallel projection kernels. Both backends
/// run identical per-item arithmetic, so their outputs are bit-identical.
enum class Backend { serial, openmp };

/// Minimum total work (items * dim) before the OpenMP kernels fork threads.
inline constexpr std::size_t kParallelGrain = 4096;

/// out[i] = P_i(in[i]) for every block of the product space.
void project_blocks(const Family& family, std::span<const Vector> in, std::span<Vector> out,
                    Backend backend);

/// out[k] = P(in[k]) for a batch of points and a single set.
void project_batch(const ConvexSet& set, std::span<const Vector> in, std::span<Vector> out,
                   Backend backend);

namespace serial {
void project_blocks(const Family& family, std::span<const Vector> in, std::span<Vector> out);
void project_batch(const ConvexSet& set, std::span<const Vector> in, std::span<Vector> out);
}  // namespace serial

namespace omp {
void project_blocks(const Family& family, std::span<const Vector> in, std::span<Vector> out);
void project_batch(const ConvexSet& set, std::span<const Vector> in, std::span<Vector> out);
}  // namespace omp

}  // namespace cyclex
