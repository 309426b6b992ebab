#include "cyclex/sweep.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace cyclex {
namespace {

using testing::vec;
using Pts = std::vector<Vector>;

Family thm23_family(double rho) {
  const Vector z = vec({1, 0});
  return Family({ConvexSet::singleton(vec({0, 0})), ConvexSet::segment(-z, z),
                 ConvexSet::singleton(rho * z)});
}

TEST(SweepOnce, DegenerateFamilyByHand) {
  const auto r = sweep_once(thm23_family(2.0), vec({5, 5}));
  ASSERT_EQ(r.intermediates.size(), 3u);
  EXPECT_EQ(r.intermediates[0], vec({2, 0}));
  EXPECT_EQ(r.intermediates[1], vec({1, 0}));
  EXPECT_EQ(r.intermediates[2], vec({0, 0}));
  EXPECT_EQ(r.point, vec({0, 0}));
}

TEST(SweepOnce, IdenticalSetsNeedOneProjection) {
  const auto ball = ConvexSet::ball(vec({0, 0}), 1.0);
  EXPECT_EQ(sweep_once(Family({ball, ball}), vec({3, 0})).point, vec({1, 0}));
}

TEST(SweepOnce, CommonPointIsFixed) {
  const Family fam({ConvexSet::ball(vec({0, 0}), 2.0), ConvexSet::halfspace(vec({1, 1}), 1.0),
                    ConvexSet::box(vec({-1, -1}), vec({1, 1}))});
  const Vector x = vec({0.25, -0.5});
  const auto r = sweep_once(fam, x);
  EXPECT_EQ(r.point, x);
  for (const auto& p : r.intermediates) EXPECT_EQ(p, x);
}

TEST(SweepOnce, CustomOrderAndValidation) {
  const auto fam = thm23_family(2.0);
  const std::vector<std::size_t> forward = {0, 1, 2};
  const auto r = sweep_once(fam, vec({5, 5}), forward);
  EXPECT_EQ(r.intermediates[0], vec({0, 0}));
  EXPECT_EQ(r.point, vec({2, 0}));
  const std::vector<std::size_t> bad = {0, 0, 2};
  EXPECT_THROW(sweep_once(fam, vec({5, 5}), bad), LengthMismatch);
  EXPECT_THROW(sweep_once(fam, vec({5, 5, 5})), DimensionMismatch);
}

TEST(CycleResidual, Examples) {
  const auto fam = thm23_family(2.0);
  EXPECT_EQ(cycle_residual(fam, Pts{vec({0, 0}), vec({1, 0}), vec({2, 0})}), 0.0);
  EXPECT_DOUBLE_EQ(cycle_residual(fam, Pts{vec({0, 0}), vec({0, 0}), vec({2, 0})}), 1.0);
  const Family meet({ConvexSet::ball(vec({0, 0}), 1), ConvexSet::ball(vec({1, 0}), 1)});
  EXPECT_EQ(cycle_residual(meet, Pts{vec({0.5, 0}), vec({0.5, 0})}), 0.0);
  EXPECT_THROW(cycle_residual(fam, Pts{vec({0, 0})}), LengthMismatch);
}

TEST(RunPeriodic, DegenerateFamilyCycle) {
  const auto run = run_periodic(thm23_family(2.0), vec({5, 5}), SolverConfig{});
  EXPECT_EQ(run.trajectory.stop_reason, StopReason::converged);
  EXPECT_EQ(run.cycle.points[0], vec({0, 0}));
  EXPECT_EQ(run.cycle.points[1], vec({1, 0}));
  EXPECT_EQ(run.cycle.points[2], vec({2, 0}));
  EXPECT_LE(run.cycle.residual, 1e-12);
  // Dense trajectory: m rows per sweep, inner index 0..m-1, P_3 applied first.
  ASSERT_EQ(run.trajectory.iterates.size(), 3 * run.trajectory.sweeps_used);
  for (std::size_t r = 0; r < run.trajectory.iterates.size(); ++r) {
    EXPECT_EQ(run.trajectory.iterates[r].sweep, r / 3);
    EXPECT_EQ(run.trajectory.iterates[r].inner, r % 3);
    EXPECT_EQ(run.trajectory.iterates[r].set_index, 2 - r % 3);
  }
}

TEST(RunPeriodic, DisjointBallsCollinearCycle) {
  const Family fam({ConvexSet::ball(vec({0, 0}), 1), ConvexSet::ball(vec({5, 0}), 1)});
  const auto run = run_periodic(fam, vec({0, 3}), SolverConfig{});
  EXPECT_LE((run.cycle.points[0] - vec({1, 0})).norm(), 1e-10);
  EXPECT_LE((run.cycle.points[1] - vec({4, 0})).norm(), 1e-10);
  EXPECT_LE(run.cycle.residual, 1e-10);
}

TEST(RunPeriodic, IntersectingHalfspacesGiveConstantCycle) {
  const Family fam({ConvexSet::halfspace(vec({1, 0}), 1), ConvexSet::halfspace(vec({0, 1}), 1)});
  const auto run = run_periodic(fam, vec({4, 7}), SolverConfig{});
  EXPECT_EQ(run.cycle.points[0], run.cycle.points[1]);
  EXPECT_TRUE(contains(fam[0], run.cycle.points[0], 0.0));
  EXPECT_TRUE(contains(fam[1], run.cycle.points[0], 0.0));
  EXPECT_LE(run.cycle.residual, 1e-12);
}

TEST(RunPeriodic, NotConvergedCarriesDiagnostics) {
  const Family fam({ConvexSet::ball(vec({0, 0}), 1), ConvexSet::ball(vec({5, 0}), 1)});
  SolverConfig cfg;
  cfg.max_sweeps = 1;
  try {
    run_periodic(fam, vec({0, 3}), cfg);
    FAIL() << "expected PeriodicNotConverged";
  } catch (const PeriodicNotConverged& e) {
    EXPECT_EQ(e.result().trajectory.stop_reason, StopReason::max_iterations);
    EXPECT_EQ(e.result().trajectory.sweeps_used, 1u);
    EXPECT_EQ(e.result().cycle.points.size(), 2u);
    EXPECT_GT(e.result().cycle.residual, 0.0);
  }
}

// Boundedness is sufficient, not necessary: unbounded families are run, not rejected.
TEST(RunPeriodic, UnboundedFamiliesAreAccepted) {
  const Family touching({ConvexSet::halfspace(vec({0, 1}), 0.0), ConvexSet::ray(vec({1, 1}))});
  EXPECT_FALSE(touching.any_bounded());
  const auto run = run_periodic(touching, vec({3, 3}), SolverConfig{});
  EXPECT_LE(run.cycle.points[0].norm(), 1e-12);
  const Family apart({ConvexSet::halfspace(vec({-1, 0}), 0.0), ConvexSet::halfspace(vec({1, 0}), -3.0)});
  const auto slab = run_periodic(apart, vec({1, 1}), SolverConfig{});
  EXPECT_NEAR((slab.cycle.points[0] - slab.cycle.points[1]).norm(), 3.0, 1e-12);
}

// Fejer monotonicity of the sweep map around the computed fixed point.
TEST(RunPeriodic, FejerMonotoneReplay) {
  testing::Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ConvexSet> sets;
    for (int i = 0; i < 3; ++i) sets.push_back(ConvexSet::ball(rng.vector(2, 4.0), rng.uniform(0.5, 2.0)));
    const Family fam(std::move(sets));
    const Vector x0 = rng.vector(2, 10.0);
    const auto run = run_periodic(fam, x0, SolverConfig{});
    const Vector f = run.trajectory.iterates.back().x;
    double prev = (x0 - f).norm();
    for (const auto& e : run.trajectory.iterates) {
      if (e.inner != fam.size() - 1) continue;
      const double d = (e.x - f).norm();
      ASSERT_LE(d, prev + 1e-10);
      prev = d;
    }
    EXPECT_LE(cycle_residual(fam, run.cycle.points), SolverConfig{}.cycle_tol);
  }
}

TEST(RunPeriodic, FeasibleFamilyCollapsesToCommonPoint) {
  testing::Rng rng(22);
  const SolverConfig cfg;
  for (int trial = 0; trial < 20; ++trial) {
    const Vector p = rng.vector(3, 2.0);
    std::vector<ConvexSet> sets;
    sets.push_back(ConvexSet::ball(p + rng.unit(3) * 0.5, 1.0));
    sets.push_back(ConvexSet::box(p - Vector::Constant(3, 0.7), p + Vector::Constant(3, 0.4)));
    const Vector n = rng.unit(3);
    sets.push_back(ConvexSet::halfspace(n, n.dot(p) + 0.3));
    const Family fam(std::move(sets));
    const auto run = run_periodic(fam, rng.vector(3, 10.0), cfg);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        EXPECT_LE((run.cycle.points[i] - run.cycle.points[j]).norm(), 10 * cfg.cycle_tol);
  }
}

TEST(CycleResidual, OrderCovariance) {
  testing::Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ConvexSet> sets;
    std::vector<Vector> pts;
    for (int i = 0; i < 4; ++i) {
      sets.push_back(testing::random_set(testing::all_variants()[rng.index(8)], 3, rng));
      pts.push_back(rng.vector(3));
    }
    // Cyclic relabelling keeps the cycle relations intact.
    std::vector<std::size_t> perm(4);
    std::iota(perm.begin(), perm.end(), 0);
    std::rotate(perm.begin(), perm.begin() + 1 + rng.index(3), perm.end());
    std::vector<ConvexSet> psets;
    std::vector<Vector> ppts;
    for (auto k : perm) {
      psets.push_back(sets[k]);
      ppts.push_back(pts[k]);
    }
    EXPECT_NEAR(cycle_residual(Family(sets), pts), cycle_residual(Family(psets), ppts), 1e-12);
  }
}

TEST(MinDistancePair, DisjointBalls) {
  const auto r = min_distance_pair(ConvexSet::ball(vec({0, 0}), 1), ConvexSet::ball(vec({5, 0}), 1),
                                   vec({0, 3}), SolverConfig{});
  EXPECT_NEAR(r.distance, 3.0, 1e-8);
}

TEST(MinDistancePair, IntersectingSets) {
  const auto r = min_distance_pair(ConvexSet::ball(vec({0, 0}), 2), ConvexSet::box(vec({1, 1}), vec({3, 3})),
                                   vec({-4, 9}), SolverConfig{});
  EXPECT_LE(r.distance, 1e-12);
}

TEST(MinDistancePair, ParallelSlabs) {
  const auto lower = ConvexSet::halfspace(vec({1, 0}), 0.0);
  const auto upper = ConvexSet::halfspace(vec({-1, 0}), -2.0);
  const auto r = min_distance_pair(lower, upper, vec({7, -3}), SolverConfig{});
  EXPECT_NEAR(r.distance, 2.0, 1e-8);
  EXPECT_TRUE(contains(lower, r.first, 1e-12));
  EXPECT_TRUE(contains(upper, r.second, 1e-12));
}

TEST(MinDistancePair, NoFeasiblePairIsCloser) {
  testing::Rng rng(24);
  const auto c1 = ConvexSet::ellipsoid(vec({0, 0}), vec({2, 1}));
  const auto c2 = ConvexSet::ball(vec({5, 3}), 1.5);
  const auto r = min_distance_pair(c1, c2, vec({0, 0}), SolverConfig{});
  for (int k = 0; k < 100; ++k) {
    const Vector p1 = testing::sample_member(c1, rng);
    const Vector p2 = testing::sample_member(c2, rng);
    EXPECT_LE(r.distance, (p1 - p2).norm() + 1e-8);
  }
}

}  // namespace
}  // namespace cyclex
