// Serial reference vs. OpenMP kernels for the blockwise product projection
// and batched single-set projection.

#include "cyclex/kernels.hpp"
#include "cyclex/product.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace cyclex;

Family ball_family(std::size_t m, std::size_t dim) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<ConvexSet> sets;
  for (std::size_t i = 0; i < m; ++i) {
    Vector c(dim);
    for (auto& v : c) v = 5.0 * g(rng);
    if (i % 2 == 0) {
      sets.push_back(ConvexSet::ball(c, 1.0));
    } else {
      Vector axes = Vector::Constant(dim, 1.0) + Vector::LinSpaced(dim, 0.0, 2.0);
      sets.push_back(ConvexSet::ellipsoid(c, axes));
    }
  }
  return Family(std::move(sets));
}

ProductPoint random_tuple(std::size_t m, std::size_t dim) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  ProductPoint y(m, Vector(dim));
  for (auto& b : y)
    for (auto& v : b) v = 10.0 * g(rng);
  return y;
}

void BM_ProjectBlocks(benchmark::State& state, Backend backend) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  const Family family = ball_family(m, dim);
  const ProductPoint in = random_tuple(m, dim);
  ProductPoint out(m);
  for (auto _ : state) {
    project_blocks(family, in, out, backend);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m));
}

void BM_SolveParallel(benchmark::State& state, Backend backend) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto dim = static_cast<std::size_t>(state.range(1));
  const Family family = ball_family(m, dim);
  SolverConfig cfg = SolverConfig::product_defaults();
  cfg.backend = backend;
  cfg.record = false;
  cfg.max_iters = 50;
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(solve_parallel(family, random_tuple(m, dim), cfg,
                                              ParallelVariant::full_mean));
    } catch (const ProductNotConverged& e) {
      benchmark::DoNotOptimize(e.result().solution.data());
    }
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_ProjectBlocks, serial, Backend::serial)
    ->Args({8, 64})->Args({64, 256})->Args({512, 512});
BENCHMARK_CAPTURE(BM_ProjectBlocks, openmp, Backend::openmp)
    ->Args({8, 64})->Args({64, 256})->Args({512, 512});
BENCHMARK_CAPTURE(BM_SolveParallel, serial, Backend::serial)->Args({64, 256});
BENCHMARK_CAPTURE(BM_SolveParallel, openmp, Backend::openmp)->Args({64, 256});

BENCHMARK_MAIN();
