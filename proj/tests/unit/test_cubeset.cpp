#include <gtest/gtest.h>

#include "isocube/bits.hpp"
#include "isocube/cubeset.hpp"
#include "isocube/error.hpp"
#include "isocube/isoperimetry.hpp"
#include "oracles.hpp"

using namespace isocube;

TEST(CubeSet, MakeSetUsesBitPerCoordinate) {
  const CubeSet a = CubeSet::from_vertices(3, {0, 3});
  EXPECT_EQ(a.size(), 2u);
  EXPECT_TRUE(a.contains(0));
  EXPECT_TRUE(a.contains(3));  // x1 = x2 = 1, x3 = 0
  EXPECT_FALSE(a.contains(4));
  EXPECT_EQ(a.members(), (std::vector<Vertex>{0, 3}));
}

TEST(CubeSet, DuplicatesCollapse) {
  const CubeSet a = CubeSet::from_vertices(3, {5, 5, 1, 5});
  EXPECT_EQ(a.size(), 2u);
}

TEST(CubeSet, EmptyAndFull) {
  const CubeSet e = CubeSet::from_vertices(3, {});
  EXPECT_EQ(e.size(), 0u);
  EXPECT_TRUE(e.empty());
  const CubeSet f = CubeSet::from_vertices(2, {0, 1, 2, 3});
  EXPECT_TRUE(f.is_full());
  EXPECT_EQ(f, CubeSet::full(2));
}

TEST(CubeSet, OutOfRangeIndexIsNamed) {
  try {
    (void)CubeSet::from_vertices(3, {1, 8});
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find('8'), std::string::npos);
  }
}

TEST(CubeSet, DimensionLimits) {
  EXPECT_THROW((void)CubeSet::empty(25), InputError);
  EXPECT_THROW((void)CubeSet::empty(-1), InputError);
  EXPECT_EQ(CubeSet::full(0).size(), 1u);
}

TEST(CubeSet, ComplementAndCounts) {
  const CubeSet a = oracle::random_set(9, 0.3, 11);
  const CubeSet c = a.complement();
  EXPECT_EQ(a.size() + c.size(), 512u);
  EXPECT_EQ(a.intersection_size(c), 0u);
  EXPECT_EQ(a.symmetric_difference_size(c), 512u);
  EXPECT_EQ(a.symmetric_difference_size(a), 0u);
}

TEST(CubeSet, MembersAscendingAndSizeCached) {
  const CubeSet a = oracle::random_set(10, 0.5, 3);
  const auto m = a.members();
  EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
  EXPECT_EQ(m.size(), a.size());
  std::uint64_t count = 0;
  for (std::uint64_t v = 0; v < 1024; ++v) count += a.contains(static_cast<Vertex>(v));
  EXPECT_EQ(count, a.size());
}

TEST(CubeSet, FromWordsRejectsStrayBits) {
  EXPECT_THROW((void)CubeSet::from_words(2, {0x10}), InputError);
  EXPECT_EQ(CubeSet::from_words(2, {0x9}).size(), 2u);
}

TEST(CubeSetBuilder, InsertEraseFlip) {
  CubeSetBuilder b(4);
  b.insert(3);
  b.insert(7);
  b.erase(3);
  b.flip(9);
  b.flip(7);
  const CubeSet a = std::move(b).build();
  EXPECT_EQ(a.members(), (std::vector<Vertex>{9}));
}

TEST(SubCube, Members) {
  EXPECT_EQ(subcube_members(SubCube::from_assignments(3, {{1, 0}})).members(), (std::vector<Vertex>{0, 2, 4, 6}));
  EXPECT_EQ(subcube_members(SubCube::from_assignments(3, {{1, 0}, {2, 0}, {3, 0}})).members(),
            (std::vector<Vertex>{0}));
  EXPECT_EQ(subcube_members(SubCube::whole(4)).size(), 16u);
}

TEST(SubCube, MemberCountMatchesCodimension) {
  for (const SubCube& c : oracle::all_subcubes(4)) {
    EXPECT_EQ(subcube_members(c).size(), std::uint64_t{1} << (4 - c.codim()));
    EXPECT_EQ(c.size(), subcube_members(c).size());
  }
}

TEST(SubCube, DisjointIffDisagreeOnCommonCoordinate) {
  const auto cubes = oracle::all_subcubes(3);
  for (const SubCube& a : cubes) {
    for (const SubCube& b : cubes) {
      const bool overlap = subcube_members(a).intersection_size(subcube_members(b)) > 0;
      EXPECT_EQ(a.disjoint_from(b), !overlap);
    }
  }
}

TEST(SubCube, RejectsBadAssignments) {
  EXPECT_THROW((void)SubCube::from_assignments(3, {{4, 0}}), InputError);
  EXPECT_THROW((void)SubCube::from_assignments(3, {{1, 0}, {1, 1}}), InputError);
  EXPECT_THROW((void)SubCube::from_assignments(3, {{1, 2}}), InputError);
}

TEST(SubCube, IsSubcubeDetection) {
  // Fixing T and letting [n] \ T vary reproduces membership exactly.
  for (const SubCube& c : oracle::all_subcubes(4)) {
    const CubeSet m = subcube_members(c);
    for (std::uint32_t v = 0; v < 16; ++v) EXPECT_EQ(m.contains(v), (v & c.fixed().mask()) == c.pattern());
  }
}

TEST(SubCube, CanonicalOrder) {
  const SubCube whole = SubCube::whole(3);
  const SubCube x1 = SubCube::from_assignments(3, {{1, 0}});
  const SubCube x1b = SubCube::from_assignments(3, {{1, 1}});
  const SubCube x2 = SubCube::from_assignments(3, {{2, 0}});
  EXPECT_TRUE(canonical_less(whole, x1));
  EXPECT_TRUE(canonical_less(x1, x1b));
  EXPECT_TRUE(canonical_less(x1b, x2));
  EXPECT_FALSE(canonical_less(x1, x1));
}

TEST(Harper, Examples) {
  const CubeSet h = harper_segment(4, 8);
  EXPECT_EQ(h, subcube_members(SubCube::from_assignments(4, {{4, 0}})));
  EXPECT_NEAR(iso_excess(h).excess, 0.0, 1e-12);
  EXPECT_EQ(harper_segment(4, 3).members(), (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(edge_boundary(harper_segment(4, 3)), 8u);
  EXPECT_EQ(oracle::boundary(harper_segment(4, 3)), 8u);
  EXPECT_TRUE(harper_segment(7, 0).empty());
  EXPECT_THROW((void)harper_segment(4, 17), InputError);
}

TEST(Harper, PowerOfTwoSegmentsAreSubcubes) {
  for (int n = 1; n <= 8; ++n) {
    for (int d = 0; d <= n; ++d) {
      std::vector<std::pair<int, int>> fixed;
      for (int c = d + 1; c <= n; ++c) fixed.emplace_back(c, 0);
      EXPECT_EQ(harper_segment(n, std::uint64_t{1} << d), subcube_members(SubCube::from_assignments(n, fixed)));
    }
  }
}

TEST(Section, FullCube) {
  const CubeSet s = section(CubeSet::full(3), CoordSet::of({1, 2}), PartialAssignment{CoordSet::of({3}), 4});
  EXPECT_TRUE(s.is_full());
  EXPECT_EQ(s.dim(), 2);
}

TEST(Section, PointSection) {
  // A = {000, 011} as (x1, x2, x3); 011 is vertex 6.
  const CubeSet a = CubeSet::from_vertices(3, {0, 6});
  const CubeSet s = section(a, CoordSet::of({1}), PartialAssignment{CoordSet::of({2, 3}), 6});
  EXPECT_EQ(s.dim(), 1);
  EXPECT_EQ(s.members(), (std::vector<Vertex>{0}));
}

TEST(Section, EmptySetSectionsEmpty) {
  const CubeSet e = CubeSet::empty(4);
  for (std::uint32_t y = 0; y < 4; ++y) EXPECT_TRUE(section_at(e, CoordSet::of({1, 3}), y).empty());
}

TEST(Section, DomainErrors) {
  const CubeSet a = CubeSet::full(3);
  EXPECT_THROW((void)section(a, CoordSet::of({1, 2}), PartialAssignment{CoordSet::of({2, 3}), 0}), InputError);
  EXPECT_THROW((void)section(a, CoordSet::of({1}), PartialAssignment{CoordSet::of({2}), 0}), InputError);
  EXPECT_THROW((void)section_at(a, CoordSet::of({1}), 4), InputError);
}

TEST(Section, MatchesOracleAndPartitionsA) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CubeSet a = oracle::random_set(7, 0.4, seed);
    const auto i_mask = static_cast<std::uint32_t>(1 + (seed * 37) % 126);
    const int j_size = 7 - std::popcount(i_mask);
    std::uint64_t total = 0;
    for (std::uint32_t y = 0; y < (1U << j_size); ++y) {
      const CubeSet s = section_at(a, CoordSet(i_mask), y);
      EXPECT_EQ(s, oracle::section(a, i_mask, y));
      total += s.size();
    }
    EXPECT_EQ(total, a.size());
  }
}

TEST(Generate, ExplicitCubeUnion) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::CubeUnion;
  spec.n = 4;
  spec.cube_count = 2;
  spec.cubes = {SubCube::from_assignments(4, {{1, 0}, {2, 0}}), SubCube::from_assignments(4, {{1, 1}, {2, 1}})};
  const GeneratedSet g = generate(spec);
  EXPECT_EQ(g.set.size(), 8u);
  EXPECT_EQ(g.planted, spec.cubes);
}

TEST(Generate, DensityRandomIsReproducible) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::DensityRandom;
  spec.n = 10;
  spec.density = 0.25;
  spec.seed = 7;
  const CubeSet a = generate(spec).set;
  EXPECT_LE(a.size(), 1024u);
  EXPECT_EQ(a, generate(spec).set);
  spec.seed = 8;
  EXPECT_NE(a, generate(spec).set);
}

TEST(Generate, FullNoiseComplements) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::CubeUnion;
  spec.n = 8;
  spec.cube_count = 3;
  spec.min_codim = 2;
  spec.seed = 5;
  const GeneratedSet clean = generate(spec);
  spec.noise = 1.0;
  const GeneratedSet flipped = generate(spec);
  EXPECT_EQ(flipped.planted, clean.planted);
  EXPECT_EQ(flipped.set, clean.set.complement());
}

TEST(Generate, NoiselessUnionEqualsPlanted) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::CubeUnion;
    spec.n = 10;
    spec.cube_count = 1 + static_cast<int>(seed % 8);
    spec.min_codim = 2;
    spec.max_codim = 7;
    spec.seed = seed;
    const GeneratedSet g = generate(spec);
    ASSERT_EQ(g.planted.size(), static_cast<std::size_t>(spec.cube_count));
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < g.planted.size(); ++i) {
      EXPECT_GE(g.planted[i].codim(), 2);
      EXPECT_LE(g.planted[i].codim(), 7);
      for (std::size_t k = 0; k < i; ++k) EXPECT_TRUE(g.planted[i].disjoint_from(g.planted[k]));
      total += g.planted[i].size();
    }
    EXPECT_EQ(g.set.size(), total);
    for (const SubCube& c : g.planted) EXPECT_EQ(g.set.intersection_size(subcube_members(c)), c.size());
  }
}

TEST(Generate, NoisyCubePlantsOne) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::NoisyCube;
  spec.n = 9;
  spec.cube_count = 5;
  spec.noise = 0.01;
  spec.seed = 2;
  EXPECT_EQ(generate(spec).planted.size(), 1u);
}

TEST(Generate, HarperDelegates) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::HarperSegment;
  spec.n = 5;
  spec.count = 11;
  EXPECT_EQ(generate(spec).set, harper_segment(5, 11));
}

TEST(Generate, RetryBudgetExhaustion) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::CubeUnion;
  spec.n = 2;
  spec.cube_count = 3;
  spec.min_codim = 1;
  spec.max_codim = 1;  // only two disjoint halves exist
  EXPECT_THROW((void)generate(spec), GenerationError);
}

TEST(Generate, InvalidParameters) {
  GeneratorSpec spec;
  spec.n = 4;
  spec.density = 1.5;
  EXPECT_THROW((void)generate(spec), InputError);
  spec.kind = GeneratorKind::CubeUnion;
  spec.noise = -0.1;
  EXPECT_THROW((void)generate(spec), InputError);
  spec.noise = 0.0;
  spec.min_codim = 3;
  spec.max_codim = 2;
  EXPECT_THROW((void)generate(spec), InputError);
}

TEST(GeneratorKind, RoundTrip) {
  for (auto k : {GeneratorKind::CubeUnion, GeneratorKind::NoisyCube, GeneratorKind::DensityRandom,
                 GeneratorKind::HarperSegment}) {
    EXPECT_EQ(parse_generator_kind(to_string(k)), k);
  }
  EXPECT_FALSE(parse_generator_kind("cubes").has_value());
}

TEST(Bits, CompressExpandRoundTrip) {
  for (std::uint32_t mask : {0x0u, 0x1u, 0xA5u, 0xFFFFFFu, 0x800001u}) {
    for (std::uint32_t v = 0; v < 4096; v += 7) {
      EXPECT_EQ(bits::compress(v, mask), oracle::gather(v, mask));
      EXPECT_EQ(bits::compress(bits::expand(v, mask), mask), v & ((1U << std::popcount(mask)) - 1));
    }
  }
}
