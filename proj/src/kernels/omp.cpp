#include "cyclex/kernels.hpp"

#include "cyclex/errors.hpp"

#include <exception>
#include <string>

#include <omp.h>

namespace cyclex {
namespace omp {
namespace {

// Exceptions must not cross the parallel region; the first one is rethrown.
template <class Body>
void parallel_for(std::size_t count, std::size_t dim, Body&& body) {
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static) if (count * dim >= kParallelGrain)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(cyclex_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

void project_blocks(const Family& family, std::span<const Vector> in, std::span<Vector> out) {
  parallel_for(in.size(), family.dim(),
               [&](std::size_t i) { out[i] = project(family[i], in[i]); });
}

void project_batch(const ConvexSet& set, std::span<const Vector> in, std::span<Vector> out) {
  parallel_for(in.size(), set.dim(), [&](std::size_t k) { out[k] = project(set, in[k]); });
}

}  // namespace omp

void project_blocks(const Family& family, std::span<const Vector> in, std::span<Vector> out,
                    Backend backend) {
  if (in.size() != family.size() || out.size() != family.size()) {
    throw BlockCountMismatch("expected " + std::to_string(family.size()) + " blocks, got " +
                             std::to_string(in.size()));
  }
  for (const auto& v : in) {
    if (static_cast<std::size_t>(v.size()) != family.dim()) {
      throw DimensionMismatch(family.dim(), v.size());
    }
  }
  if (backend == Backend::openmp) {
    omp::project_blocks(family, in, out);
  } else {
    serial::project_blocks(family, in, out);
  }
}

void project_batch(const ConvexSet& set, std::span<const Vector> in, std::span<Vector> out,
                   Backend backend) {
  if (in.size() != out.size()) {
    throw LengthMismatch("batch input and output sizes differ");
  }
  if (backend == Backend::openmp) {
    omp::project_batch(set, in, out);
  } else {
    serial::project_batch(set, in, out);
  }
}

}  // namespace cyclex
