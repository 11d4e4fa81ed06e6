#include <gtest/gtest.h>

#include <cmath>

#include "isocube/error.hpp"
#include "isocube/isoperimetry.hpp"
#include "oracles.hpp"

using namespace isocube;

namespace {

const CubeSet kTwoPoints = CubeSet::from_vertices(3, {0, 6});  // {000, 011} as (x1, x2, x3)

CubeSet two_cubes_q4() {
  return CubeSet::from_predicate(4, [](Vertex v) { return ((v & 1U) == 0) == ((v & 2U) == 0); });
}

CubeSet dictator(int n) {
  return CubeSet::from_predicate(n, [](Vertex v) { return (v & 1U) != 0; });
}

}  // namespace

TEST(Dyadic, NormalizesAndCompares) {
  EXPECT_EQ(Dyadic(4, 3), Dyadic(1, 1));
  EXPECT_EQ(Dyadic(4, 3).to_string(), "1/2");
  EXPECT_EQ(Dyadic(8, 3).to_string(), "1");
  EXPECT_EQ(Dyadic(0, 5), Dyadic(0, 0));
  EXPECT_LT(Dyadic(3, 3), Dyadic(1, 1));
  EXPECT_GT(Dyadic(5, 3), Dyadic(1, 1));
  EXPECT_DOUBLE_EQ(Dyadic(3, 2).to_double(), 0.75);
}

TEST(EdgeBoundary, Examples) {
  EXPECT_EQ(edge_boundary(subcube_members(SubCube::from_assignments(3, {{1, 0}, {2, 0}}))), 4u);
  EXPECT_EQ(edge_boundary(kTwoPoints), 6u);
  EXPECT_EQ(edge_boundary(CubeSet::full(5)), 0u);
}

TEST(EdgeBoundary, SubcubeFormula) {
  for (int n = 1; n <= 9; ++n) {
    for (int d = 0; d <= n; ++d) {
      const CubeSet c = harper_segment(n, std::uint64_t{1} << d);
      EXPECT_EQ(edge_boundary(c), (std::uint64_t{1} << d) * static_cast<std::uint64_t>(n - d));
    }
  }
}

TEST(EdgeBoundary, MatchesOracleAllDirections) {
  for (int n : {1, 2, 5, 6, 7, 9, 11}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const CubeSet a = oracle::random_set(n, 0.1 + 0.2 * static_cast<double>(seed), seed * 31 + n);
      EXPECT_EQ(edge_boundary(a), oracle::boundary(a));
      const auto per_dir = boundary_by_direction(a);
      std::uint64_t sum = 0;
      for (int i = 1; i <= n; ++i) {
        EXPECT_EQ(per_dir[static_cast<std::size_t>(i - 1)], oracle::boundary(a, 1U << (i - 1)));
        sum += per_dir[static_cast<std::size_t>(i - 1)];
      }
      EXPECT_EQ(sum, edge_boundary(a));
      const std::uint32_t dirs = static_cast<std::uint32_t>(seed * 0x2B) & CoordSet::full(n).mask();
      EXPECT_EQ(edge_boundary(a, CoordSet(dirs)), oracle::boundary(a, dirs));
    }
  }
}

TEST(EdgeBoundary, RejectsForeignDirections) {
  EXPECT_THROW((void)edge_boundary(kTwoPoints, CoordSet::of({4})), InputError);
}

TEST(IsoExcess, Examples) {
  const IsoReport point = iso_excess(CubeSet::from_vertices(3, {5}));
  EXPECT_EQ(point.boundary, 3u);
  EXPECT_NEAR(point.excess, 0.0, 1e-12);
  EXPECT_NEAR(iso_excess(kTwoPoints).excess, 1.0, 1e-12);
  const IsoReport two = iso_excess(two_cubes_q4());
  EXPECT_EQ(two.boundary, 16u);
  EXPECT_NEAR(two.bound, 8.0, 1e-12);
  EXPECT_NEAR(two.excess, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(two.alpha, 0.5);
}

TEST(IsoExcess, EmptyIsDomainError) { EXPECT_THROW((void)iso_excess(CubeSet::empty(3)), DomainError); }

TEST(IsoExcess, SubcubesAreTight) {
  for (int n = 0; n <= 5; ++n) {
    for (const SubCube& c : oracle::all_subcubes(n)) {
      EXPECT_LE(std::abs(iso_excess(subcube_members(c)).excess), 1e-12);
    }
  }
}

TEST(IsoExcess, MatchesOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    CubeSet a = oracle::random_set(8, 0.05 + 0.03 * static_cast<double>(seed), seed);
    if (a.empty()) continue;
    EXPECT_NEAR(iso_excess(a).excess, oracle::excess(a), 1e-12);
  }
}

TEST(Influence, Examples) {
  const InfluenceProfile d = influence_profile(dictator(5));
  EXPECT_EQ(d.influence(1), Dyadic(1, 0));
  for (int i = 2; i <= 5; ++i) EXPECT_EQ(d.influence(i), Dyadic(0, 0));

  const InfluenceProfile two = influence_profile(two_cubes_q4());
  EXPECT_EQ(two.influence(1), Dyadic(1, 0));
  EXPECT_EQ(two.influence(2), Dyadic(1, 0));
  EXPECT_EQ(two.influence(3), Dyadic(0, 0));
  EXPECT_EQ(two.influence(4), Dyadic(0, 0));
  EXPECT_EQ(two.max_coordinate(), 1);

  const InfluenceProfile full = influence_profile(CubeSet::full(4));
  EXPECT_EQ(full.total(), Dyadic(0, 0));
}

TEST(Influence, IdentityAndOracle) {
  for (int n = 1; n <= 12; ++n) {
    const CubeSet a = oracle::random_set(n, 0.37, static_cast<std::uint64_t>(n) * 977);
    const InfluenceProfile p = influence_profile(a);
    for (int i = 1; i <= n; ++i) {
      EXPECT_EQ(p.influence(i), Dyadic(oracle::disagreements(a, i), n));
      EXPECT_LE(p.influence(i), Dyadic(1, 0));
    }
    // I(1_A) 2^(n-1) = |∂A|, i.e. I(1_A) = 2|∂A| / 2^n.
    EXPECT_EQ(p.total(), Dyadic(2 * oracle::boundary(a), n));
  }
}

TEST(Talagrand, Examples) {
  const TalagrandReport d = talagrand_ratio(dictator(4));
  EXPECT_DOUBLE_EQ(d.sum, 1.0);
  EXPECT_DOUBLE_EQ(d.variance, 0.25);
  EXPECT_DOUBLE_EQ(d.ratio, 4.0);
  const TalagrandReport t = talagrand_ratio(kTwoPoints);
  EXPECT_NEAR(t.sum, 0.75, 1e-15);
  EXPECT_NEAR(t.variance, 0.1875, 1e-15);
  EXPECT_NEAR(t.ratio, 4.0, 1e-12);
  EXPECT_THROW((void)talagrand_ratio(CubeSet::full(3)), DomainError);
  EXPECT_THROW((void)talagrand_ratio(CubeSet::empty(3)), DomainError);
}

TEST(BestSubcube, Examples) {
  const SubCube c = SubCube::from_assignments(4, {{2, 1}, {4, 0}});
  const BestSubcube exact = best_subcube(subcube_members(c), SearchMode::Exhaustive);
  EXPECT_EQ(exact.cube, c);
  EXPECT_EQ(exact.distance, 0u);

  EXPECT_EQ(best_subcube(kTwoPoints, SearchMode::Exhaustive).distance, 1u);

  const SubCube base = SubCube::from_assignments(4, {{1, 0}, {2, 0}});
  CubeSetBuilder b(4);
  subcube_members(base).for_each_member([&](Vertex v) { b.insert(v); });
  b.insert(15);
  const BestSubcube plus_one = best_subcube(std::move(b).build(), SearchMode::Exhaustive);
  EXPECT_EQ(plus_one.cube, base);
  EXPECT_EQ(plus_one.distance, 1u);
}

TEST(BestSubcube, TieBreakIsCanonical) {
  // Several subcubes tie at distance 1; the canonical minimum must win.
  const BestSubcube r = best_subcube(kTwoPoints, SearchMode::Exhaustive);
  SubCube expected;
  bool have = false;
  for (const SubCube& c : oracle::all_subcubes(3)) {
    if (oracle::distance(kTwoPoints, c) != 1) continue;
    if (!have || canonical_less(c, expected)) expected = c;
    have = true;
  }
  EXPECT_EQ(r.cube, expected);
}

TEST(BestSubcube, ExhaustiveMatchesOracleAndGreedyIsNoBetter) {
  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const CubeSet a = oracle::random_set(n, 0.15 + 0.06 * static_cast<double>(seed), seed * 7 + n);
      const BestSubcube ex = best_subcube(a, SearchMode::Exhaustive);
      const BestSubcube gr = best_subcube(a, SearchMode::Greedy);
      EXPECT_EQ(ex.distance, oracle::best_distance(a));
      EXPECT_EQ(ex.distance, oracle::distance(a, ex.cube));
      EXPECT_EQ(gr.distance, oracle::distance(a, gr.cube));
      EXPECT_GE(gr.distance, ex.distance);
    }
  }
}

TEST(BestSubcube, ExhaustiveCapability) {
  EXPECT_THROW((void)best_subcube(CubeSet::empty(15), SearchMode::Exhaustive), CapabilityError);
  EXPECT_NO_THROW((void)best_subcube(CubeSet::from_vertices(16, {3}), SearchMode::Greedy));
}

TEST(MinBoundary, Examples) {
  EXPECT_EQ(min_boundary_oracle(4, 8), 8u);
  EXPECT_EQ(min_boundary_oracle(4, 3), 8u);
  EXPECT_EQ(min_boundary_oracle(3, 0), 0u);
  EXPECT_THROW((void)min_boundary_oracle(5, 3), CapabilityError);
  EXPECT_THROW((void)min_boundary_oracle(4, 17), InputError);
}

TEST(MinBoundary, TableMatchesClosedFormAndHarper) {
  for (int n = 0; n <= 4; ++n) {
    const auto table = min_boundary_table(n);
    ASSERT_EQ(table.size(), (std::size_t{1} << n) + 1);
    for (std::uint64_t m = 0; m <= (std::uint64_t{1} << n); ++m) {
      EXPECT_EQ(table[m], oracle::harper_minimum(n, m));
      EXPECT_EQ(table[m], edge_boundary(harper_segment(n, m)));
    }
  }
}

TEST(Ellis, Examples) {
  const EllisReport cube = ellis_check(subcube_members(SubCube::from_assignments(4, {{3, 1}})));
  EXPECT_NEAR(cube.excess, 0.0, 1e-12);
  EXPECT_EQ(cube.relative_distance, 0.0);
  EXPECT_TRUE(cube.holds);

  const EllisReport two = ellis_check(kTwoPoints);
  EXPECT_FALSE(two.applicable);
  EXPECT_DOUBLE_EQ(two.relative_distance, 0.5);

  const EllisReport harper = ellis_check(harper_segment(4, 8));
  EXPECT_NEAR(harper.excess, 0.0, 1e-12);
  EXPECT_EQ(harper.relative_distance, 0.0);
}

TEST(Ellis, ApplicableSetsSatisfyBoundOnQ4) {
  // Sets with tiny positive excess are rare at n = 4; whatever appears must comply.
  for (std::uint64_t bitmap = 1; bitmap < oracle::subset_count(4); ++bitmap) {
    const EllisReport r = ellis_check(oracle::subset(4, bitmap));
    if (r.applicable) EXPECT_TRUE(r.holds) << bitmap;
  }
}
