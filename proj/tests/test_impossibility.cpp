#include "cyclex/errors.hpp"
#include "cyclex/impossibility.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace cyclex {
namespace {

using testing::vec;
using std::numbers::pi;

SpiralResult spiral_at_angle(double alpha, std::size_t n, double ynorm = 1.0) {
  return spiral({vec({0.1 * std::cos(alpha), 0.1 * std::sin(alpha)}), vec({ynorm, 0}), n, std::nullopt});
}

// ---- spiral -----------------------------------------------------------------

TEST(Spiral, QuarterTurnInTwoSteps) {
  const auto r = spiral({vec({0, 0.1}), vec({1, 0}), 2, std::nullopt});
  ASSERT_EQ(r.points.size(), 3u);
  EXPECT_LE((r.points[0] - vec({1, 0})).norm(), 1e-15);
  EXPECT_LE((r.points[1] - vec({0.5, 0.5})).norm(), 1e-15);
  EXPECT_LE((r.points[2] - vec({0, 0.5})).norm(), 1e-15);
  EXPECT_NEAR(r.final_norm, 0.5, 1e-15);
  EXPECT_NEAR(r.alpha, pi / 2, 1e-15);
}

TEST(Spiral, ZeroAngleStaysPut) {
  const auto r = spiral({vec({0.3, 0.4}), vec({3, 4}), 5, std::nullopt});
  for (const auto& p : r.points) EXPECT_LE((p - vec({3, 4})).norm(), 1e-14);
  EXPECT_NEAR(r.final_norm, 5.0, 1e-14);
}

TEST(Spiral, NormLawAcrossAnglesAndCounts) {
  for (double alpha : {pi / 6, pi / 2, 3 * pi / 4}) {
    for (std::size_t n : {3u, 10u, 100u, 10000u}) {
      const auto r = spiral_at_angle(alpha, n, 2.0);
      const double c = std::cos(alpha / n);
      double expected = 2.0;
      for (std::size_t k = 0; k <= n; ++k) {
        ASSERT_NEAR(r.points[k].norm(), expected, 1e-12 * expected) << alpha << " " << n << " " << k;
        expected *= c;
      }
      EXPECT_NEAR(r.final_norm / 2.0, std::pow(c, static_cast<double>(n)), 1e-12);
    }
  }
}

TEST(Spiral, RayMembershipAndChordMinNorm) {
  for (double alpha : {pi / 6, pi / 2, 3 * pi / 4}) {
    const auto r = spiral_at_angle(alpha, 50);
    ASSERT_EQ(r.rays.size(), 50u);
    for (std::size_t k = 1; k <= 50; ++k) {
      const auto ray = ConvexSet::ray(r.rays[k - 1]);
      EXPECT_LE((project(ray, r.points[k]) - r.points[k]).norm(), 1e-12);
      const auto chord = ConvexSet::segment(r.points[k - 1], r.points[k]);
      EXPECT_LE((min_norm_point(chord) - r.points[k]).norm(), 1e-12);
    }
  }
}

TEST(Spiral, FinalPointIsCollinearWithTarget) {
  const Vector x = vec({-0.2, 0.3, 0.1});
  const auto r = spiral({x, vec({1, 2, -1}), 7, std::nullopt});
  const Vector u = x.normalized();
  EXPECT_LE((r.points.back() - r.points.back().dot(u) * u).norm(), 1e-12);
  EXPECT_GT(r.points.back().dot(u), 0.0);
}

TEST(Spiral, LargeCountKeepsNorm) {
  const auto r = spiral_at_angle(pi / 2, 1000000);
  EXPECT_GE(r.final_norm, 1.0 - 1e-5);
  EXPECT_NEAR(r.final_norm, std::exp(-pi * pi / 8e6), 1e-9);
}

TEST(Spiral, Errors) {
  EXPECT_THROW(spiral({vec({0, 0}), vec({1, 0}), 3, std::nullopt}), DegenerateInput);
  EXPECT_THROW(spiral({vec({0, 1}), vec({1, 0}), 3, std::nullopt}), DegenerateInput);
  EXPECT_THROW(spiral({vec({0, 0.5}), vec({1, 0}), 0, std::nullopt}), DegenerateInput);
  EXPECT_THROW(spiral({vec({-0.5, 0}), vec({1, 0}), 3, std::nullopt}), AntipodalAmbiguity);
  EXPECT_THROW(spiral({vec({0.5}), vec({1, 0}), 3, std::nullopt}), DimensionMismatch);
}

TEST(Spiral, AntipodalWithPlaneHint) {
  const auto r = spiral({vec({-0.5, 0}), vec({1, 0}), 4, vec({0, 1})});
  EXPECT_NEAR(r.alpha, pi, 1e-15);
  EXPECT_NEAR(r.final_norm, std::pow(std::cos(pi / 4), 4), 1e-14);
  EXPECT_GT(r.points[2][1], 0.0);
}

// ---- degenerate families ------------------------------------------------------

TEST(DegenerateFamilies, ThreeSetsExample) {
  const auto f = thm23_families(3, vec({1, 0}), 2.0);
  ASSERT_EQ(f.cycle_plus.size(), 3u);
  EXPECT_EQ(f.cycle_plus[0], vec({0, 0}));
  EXPECT_EQ(f.cycle_plus[1], vec({1, 0}));
  EXPECT_EQ(f.cycle_plus[2], vec({2, 0}));
  EXPECT_EQ(f.cycle_minus[1], vec({-1, 0}));
  EXPECT_EQ(f.cycle_minus[2], vec({-2, 0}));
  EXPECT_EQ(f.residual_plus, 0.0);
  EXPECT_EQ(f.residual_minus, 0.0);
  EXPECT_TRUE(f.verified);
}

TEST(DegenerateFamilies, FourSetsExample) {
  const auto f = thm23_families(4, vec({0, 1}), 1.5);
  EXPECT_EQ(f.cycle_plus[0], vec({0, 0}));
  EXPECT_EQ(f.cycle_plus[1], vec({0, 0}));
  EXPECT_EQ(f.cycle_plus[2], vec({0, 1}));
  EXPECT_EQ(f.cycle_plus[3], vec({0, 1.5}));
  EXPECT_EQ(f.cycle_minus[3], vec({0, -1.5}));
  EXPECT_TRUE(f.verified);
}

TEST(DegenerateFamilies, SweepEngineReproducesCycle) {
  const auto f = thm23_families(3, vec({1, 0}), 2.0);
  const auto run = run_periodic(f.plus, vec({7, -7}), SolverConfig{});
  EXPECT_LE(testing::max_block_distance(run.cycle.points, f.cycle_plus), 1e-10);
}

TEST(DegenerateFamilies, RandomDirections) {
  testing::Rng rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 3 + rng.index(3);
    const auto f = thm23_families(m, rng.unit(2 + rng.index(3)), rng.uniform(1.05, 5.0), trial);
    EXPECT_TRUE(f.verified) << f.max_run_deviation;
  }
}

TEST(DegenerateFamilies, Errors) {
  EXPECT_THROW(thm23_families(3, vec({1, 1}), 2.0), InvalidUnitVector);
  EXPECT_THROW(thm23_families(3, vec({1, 0}), 1.0), InvalidRho);
  EXPECT_THROW(thm23_families(3, vec({1, 0}), 0.5), InvalidRho);
  EXPECT_THROW(thm23_families(2, vec({1, 0}), 2.0), DegenerateInput);
}

TEST(OrthogonalCompletion, UnitAndOrthogonal) {
  testing::Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector z = rng.unit(2 + rng.index(4));
    const Vector w = orthogonal_completion(z);
    EXPECT_NEAR(w.norm(), 1.0, 1e-14);
    EXPECT_NEAR(w.dot(z), 0.0, 1e-14);
  }
  EXPECT_EQ(orthogonal_completion(vec({1, 0})), vec({0, 1}));
}

// ---- falsifier ---------------------------------------------------------------

TEST(Falsifier, PerimeterChain) {
  const auto r = falsify_candidate(candidates::perimeter(), 3, vec({1, 0}), 2.0, 16);
  EXPECT_NEAR(r.chain[0], 4, 1e-14);
  EXPECT_NEAR(r.chain[1], 6, 1e-14);
  EXPECT_NEAR(r.chain[2], 4, 1e-14);
  EXPECT_NEAR(r.chain[3], 6, 1e-14);
  EXPECT_EQ(r.violated_link, "equality-1");
  EXPECT_NEAR(r.gap, 2, 1e-14);
  EXPECT_EQ(r.verdict, "candidate falsified");
  EXPECT_EQ(r.candidate, "perimeter");
}

TEST(Falsifier, CyclicSquaredChain) {
  const auto r = falsify_candidate(candidates::cyclic_squared(), 3, vec({1, 0}), 2.0, 16);
  EXPECT_NEAR(r.chain[0], 6, 1e-14);
  EXPECT_NEAR(r.chain[1], 14, 1e-14);
  EXPECT_NEAR(r.chain[2], 6, 1e-14);
  EXPECT_NEAR(r.chain[3], 14, 1e-14);
  EXPECT_EQ(r.violated_link, "equality-1");
  EXPECT_NEAR(r.gap, 8, 1e-14);
  EXPECT_TRUE(r.falsified());
}

TEST(Falsifier, PairwiseSquaredChain) {
  const auto r = falsify_candidate(candidates::pairwise_squared(), 3, vec({1, 0}), 2.0, 16);
  EXPECT_NEAR(r.chain[0], 1.5, 1e-14);
  EXPECT_NEAR(r.chain[1], 3.5, 1e-14);
  EXPECT_EQ(r.violated_link, "equality-1");
}

TEST(Falsifier, ConstantFailsStrictLinks) {
  const auto r = falsify_candidate(candidates::constant(), 3, vec({1, 0}), 2.0, 8);
  EXPECT_EQ(r.violated_link, "strict-1");
  EXPECT_FALSE(r.links[0].holds);
  EXPECT_FALSE(r.links[2].holds);
  EXPECT_TRUE(r.falsified());
}

TEST(Falsifier, TupleNormFailsFirstStrictLink) {
  const auto r = falsify_candidate(candidates::tuple_norm(), 4, vec({0, 1}), 3.0, 8);
  EXPECT_EQ(r.violated_link, "strict-1");
  EXPECT_TRUE(r.falsified());
}

TEST(Falsifier, BuiltinsNeverSatisfyTheLoop) {
  testing::Rng rng(43);
  for (const auto& name : candidates::builtin_names()) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto r = falsify_candidate(candidates::builtin(name), 3 + rng.index(4), rng.unit(2 + rng.index(3)),
                                       rng.uniform(1.01, 10.0), 8, trial);
      ASSERT_TRUE(r.falsified()) << name;
      ASSERT_NE(r.verdict, kVerdictLoopSatisfied);
      ASSERT_EQ(r.links.size(), 4u);
    }
  }
}

// Flipping the sign of z permutes the chain cyclically by two.
TEST(Falsifier, NegatingDirectionRotatesChain) {
  for (const auto& name : candidates::builtin_names()) {
    const auto a = falsify_candidate(candidates::builtin(name), 3, vec({0.6, 0.8}), 2.5, 4);
    const auto b = falsify_candidate(candidates::builtin(name), 3, vec({-0.6, -0.8}), 2.5, 4);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(a.chain[k], b.chain[(k + 2) % 4], 1e-12) << name;
  }
}

TEST(Falsifier, SphereProbesCatchHiddenNonConstancy) {
  // Agrees at the chain endpoints, varies elsewhere on the sphere.
  const CandidateFunctional sneaky{[](std::span<const Vector> y) {
                                     const Vector& last = y.back();
                                     const double off = last[1] * last[1];
                                     return (y[y.size() - 2][0] < 0 ? 1.0 : 0.0) + off;
                                   },
                                   "sneaky"};
  const auto r = falsify_candidate(sneaky, 3, vec({1, 0}), 2.0, 32, 7);
  EXPECT_TRUE(r.falsified());
  EXPECT_EQ(r.violated_link, "equality-1");
  EXPECT_GT(r.gap, 0.0);
}

TEST(Falsifier, Errors) {
  EXPECT_THROW(falsify_candidate(candidates::perimeter(), 3, vec({1, 0}), 1.0, 8), InvalidRho);
  EXPECT_THROW(falsify_candidate(candidates::perimeter(), 3, vec({2, 0}), 2.0, 8), InvalidUnitVector);
  EXPECT_THROW(falsify_candidate(candidates::perimeter(), 2, vec({1, 0}), 2.0, 8), DegenerateInput);
  EXPECT_THROW(falsify_candidate(candidates::perimeter(), 3, vec({1, 0}), 2.0, 1), Error);
  EXPECT_THROW(candidates::builtin("nope"), Error);
}

TEST(Falsifier, EvaluatorFailuresPropagate) {
  const CandidateFunctional bad{[](std::span<const Vector>) -> double { throw std::domain_error("boom"); }, "bad"};
  EXPECT_THROW(falsify_candidate(bad, 3, vec({1, 0}), 2.0, 4), std::domain_error);
}

// ---- candidate gap --------------------------------------------------------------

TEST(CandidateGap, DegenerateFamilyDoesNotSeparate) {
  const auto f = thm23_families(3, vec({1, 0}), 2.0);
  const auto g = candidate_gap(f.plus, ObjectiveKind::cyclic_squared, vec({3, 3}),
                               SolverConfig::product_defaults());
  EXPECT_LE(testing::max_block_distance(g.cycle.points, f.cycle_plus), 1e-10);
  EXPECT_LE((g.minimizer[1] - vec({1, 0})).norm(), 1e-8);
  EXPECT_NEAR(g.gap, 0.0, 1e-8);
  EXPECT_LE(g.displacement, 1e-8);
}

TEST(CandidateGap, ThreeBallsSeparate) {
  const Family fam({ConvexSet::ball(vec({0, 0}), 1), ConvexSet::ball(vec({10, 0}), 1),
                    ConvexSet::ball(vec({5, 1}), 1)});
  const auto g = candidate_gap(fam, ObjectiveKind::cyclic_squared, vec({0, 0}), SolverConfig::product_defaults());
  EXPECT_GT(g.displacement, 1e-3);
  EXPECT_GT(g.gap, 0.0);
}

TEST(CandidateGap, CommonPointCollapses) {
  const Family fam({ConvexSet::ball(vec({0, 0}), 2), ConvexSet::ball(vec({1, 1}), 2),
                    ConvexSet::box(vec({0, -1}), vec({2, 2}))});
  for (auto kind : {ObjectiveKind::cyclic_squared, ObjectiveKind::pairwise_squared}) {
    const auto g = candidate_gap(fam, kind, vec({5, -4}), SolverConfig::product_defaults());
    EXPECT_LE(std::abs(g.gap), 1e-10);
  }
}

TEST(CandidateGap, RejectsTargetObjective) {
  const auto f = thm23_families(3, vec({1, 0}), 2.0);
  EXPECT_THROW(candidate_gap(f.plus, ObjectiveKind::quadratic_to_target, vec({0, 0}), SolverConfig{}), Error);
}

}  // namespace
}  // namespace cyclex
