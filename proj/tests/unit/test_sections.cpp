#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "isocube/error.hpp"
#include "isocube/isoperimetry.hpp"
#include "isocube/sections.hpp"
#include "oracles.hpp"

using namespace isocube;

namespace {

// Vertex strings read x1 x2 x3 left to right; x1 is bit 0.
const CubeSet kPairedQ3 = CubeSet::from_vertices(3, {0, 4, 3, 7});  // {000, 001, 110, 111}
const CubeSet kAntipodal = CubeSet::from_vertices(3, {0, 7});        // {000, 111}

CubeSet two_cubes_q4() {
  return CubeSet::from_predicate(4, [](Vertex v) { return ((v & 1U) == 0) == ((v & 2U) == 0); });
}

/// Every partition of [n] into blocks, as restricted-growth strings.
std::vector<std::vector<CoordSet>> all_partitions(int n) {
  std::vector<std::vector<CoordSet>> out;
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  for (;;) {
    int blocks = 0;
    for (int l : label) blocks = std::max(blocks, l + 1);
    std::vector<CoordSet> p(static_cast<std::size_t>(blocks));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])] = p[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])].with(i + 1);
    out.push_back(p);
    int i = n - 1;
    for (; i > 0; --i) {
      int prefix_max = 0;
      for (int k = 0; k < i; ++k) prefix_max = std::max(prefix_max, label[static_cast<std::size_t>(k)]);
      if (label[static_cast<std::size_t>(i)] <= prefix_max) {
        ++label[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < n; ++k) label[static_cast<std::size_t>(k)] = 0;
        break;
      }
    }
    if (i <= 0) break;
  }
  return out;
}

}  // namespace

TEST(SectionTable, Examples) {
  const SectionTable t = section_table(kPairedQ3, CoordSet::of({3}));
  ASSERT_EQ(t.entries.size(), 2u);
  EXPECT_EQ(t.entries[0].y, 0u);
  EXPECT_EQ(t.entries[1].y, 3u);
  for (const auto& e : t.entries) {
    EXPECT_EQ(e.count, 2u);
    EXPECT_DOUBLE_EQ(e.alpha, 0.5);
    EXPECT_NEAR(e.excess, 0.0, 1e-12);
  }
  EXPECT_NEAR(t.entropy, 1.0, 1e-12);

  const SectionTable full = section_table(CubeSet::full(5), CoordSet::of({2, 4}));
  EXPECT_EQ(full.entries.size(), 8u);
  for (const auto& e : full.entries) EXPECT_DOUBLE_EQ(e.alpha, 0.125);
  EXPECT_NEAR(full.entropy, 3.0, 1e-12);
  EXPECT_NEAR(full.weighted_excess, 0.0, 1e-12);

  const SectionTable none = section_table(CubeSet::from_vertices(4, {1, 2, 9, 14}), CoordSet());
  EXPECT_EQ(none.entries.size(), 4u);
  EXPECT_NEAR(none.entropy, 2.0, 1e-12);
  for (const auto& e : none.entries) EXPECT_EQ(e.count, 1u);
}

TEST(SectionTable, WholeCubeIsSingleEntryWithSetExcess) {
  const CubeSet a = oracle::random_set(6, 0.4, 11);
  const SectionTable t = section_table(a, CoordSet::full(6));
  ASSERT_EQ(t.entries.size(), 1u);
  EXPECT_NEAR(t.entries[0].excess, iso_excess(a).excess, 1e-12);
  EXPECT_NEAR(t.entropy, 0.0, 1e-12);
}

TEST(SectionTable, MatchesOracle) {
  for (int n = 2; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const CubeSet a = oracle::random_set(n, 0.2 + 0.1 * static_cast<double>(seed), seed * 101 + n);
      if (a.empty()) continue;
      const std::uint32_t i_mask = static_cast<std::uint32_t>(seed * 0x5B + n) & CoordSet::full(n).mask();
      const std::uint32_t j_mask = CoordSet::full(n).mask() & ~i_mask;
      const SectionTable t = section_table(a, CoordSet(i_mask));

      std::uint64_t total = 0;
      std::uint64_t i_boundary = 0;
      double weighted = 0.0;
      for (const auto& e : t.entries) {
        const CubeSet s = oracle::section(a, i_mask, e.y);
        EXPECT_EQ(e.count, s.size());
        EXPECT_GT(e.count, 0u);
        EXPECT_EQ(e.boundary, oracle::boundary(s));
        EXPECT_NEAR(e.excess, oracle::excess(s), 1e-12);
        EXPECT_GE(e.excess, -1e-12);
        total += e.count;
        i_boundary += e.boundary;
        weighted += e.alpha * e.excess;
      }
      EXPECT_EQ(total, a.size());
      EXPECT_EQ(i_boundary, oracle::boundary(a, i_mask));
      EXPECT_EQ(t.i_boundary(), i_boundary);
      EXPECT_NEAR(t.weighted_excess, weighted, 1e-12);
      // H(alpha^I) is the entropy of the J-marginal.
      EXPECT_NEAR(t.entropy, oracle::marginal_entropy(a, j_mask), 1e-12);

      // |∂^I_e(A)| = |A| log2(2^|I| / |A|) + |A| (H(alpha^I) + K^I).
      const double s = static_cast<double>(a.size());
      const double rhs = s * (std::popcount(i_mask) - std::log2(s)) + s * (t.entropy + t.weighted_excess);
      EXPECT_NEAR(static_cast<double>(i_boundary), rhs, 1e-9 * (1.0 + s));
    }
  }
}

TEST(SectionTable, Errors) {
  EXPECT_THROW((void)section_table(CubeSet::empty(3), CoordSet::of({1})), DomainError);
  EXPECT_THROW((void)section_table(kPairedQ3, CoordSet::of({4})), InputError);
}

TEST(Entropy, Examples) {
  EXPECT_DOUBLE_EQ(entropy(std::vector<double>{0.5, 0.5}), 1.0);
  EXPECT_DOUBLE_EQ(entropy(std::vector<double>{1.0, 0.0}), 0.0);
  EXPECT_DOUBLE_EQ(entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}), 2.0);
  EXPECT_THROW((void)entropy(std::vector<double>{0.5, 0.6}), InputError);
  EXPECT_THROW((void)entropy(std::vector<double>{1.5, -0.5}), InputError);
  EXPECT_NEAR(entropy_of_counts(std::vector<std::uint64_t>{3, 1, 0}), oracle::entropy({3, 1, 0}), 1e-15);
}

TEST(MutualInformation, Examples) {
  EXPECT_NEAR(mutual_information(kPairedQ3, CoordSet::of({3})), 0.0, 1e-12);
  EXPECT_NEAR(mutual_information(kAntipodal, CoordSet::of({1})), 1.0, 1e-12);
  EXPECT_NEAR(mutual_information(CubeSet::full(4), CoordSet::of({1, 3})), 0.0, 1e-12);
  EXPECT_THROW((void)mutual_information(kAntipodal, CoordSet()), InputError);
  EXPECT_THROW((void)mutual_information(kAntipodal, CoordSet::full(3)), InputError);
}

TEST(MutualInformation, NonnegativeAndZeroOnProducts) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    const CubeSet a = oracle::random_set(n, 0.3, seed + 500);
    if (a.empty()) continue;
    const std::uint32_t i_mask = 1U + static_cast<std::uint32_t>(seed % ((1U << n) - 2));
    const std::uint32_t j_mask = CoordSet::full(n).mask() & ~i_mask;
    const double mi = mutual_information(a, CoordSet(i_mask));
    EXPECT_GE(mi, -1e-9);
    const double expected = oracle::marginal_entropy(a, i_mask) + oracle::marginal_entropy(a, j_mask) -
                            std::log2(static_cast<double>(a.size()));
    EXPECT_NEAR(mi, expected, 1e-12);

    // B x C along (I, J): B a random pattern on I, C a random pattern on J.
    const CubeSet b = oracle::random_set(n, 0.5, seed + 900);
    const CubeSet c = oracle::random_set(n, 0.5, seed + 1300);
    const CubeSet prod = CubeSet::from_predicate(n, [&](Vertex v) { return b.contains(v & i_mask) && c.contains(v & j_mask); });
    if (!prod.empty()) EXPECT_NEAR(mutual_information(prod, CoordSet(i_mask)), 0.0, 1e-12);
  }
}

TEST(SectionalControl, Examples) {
  const std::vector<CoordSet> halves{CoordSet::of({1, 2}), CoordSet::of({3, 4})};
  const SectionalControlReport r = sectional_control(two_cubes_q4(), halves);
  EXPECT_NEAR(r.k, 1.0, 1e-12);
  EXPECT_NEAR(r.lhs_ii, 1.0, 1e-12);
  EXPECT_NEAR(r.lhs_i, 0.0, 1e-12);
  EXPECT_TRUE(r.identity_holds);
  EXPECT_TRUE(r.pass);

  const CubeSet cube = subcube_members(SubCube::from_assignments(5, {{2, 1}, {5, 0}}));
  const std::vector<CoordSet> p{CoordSet::of({1, 5}), CoordSet::of({2}), CoordSet::of({3, 4})};
  const SectionalControlReport c = sectional_control(cube, p);
  EXPECT_NEAR(c.k, 0.0, 1e-12);
  EXPECT_NEAR(c.lhs_i, 0.0, 1e-12);
  EXPECT_NEAR(c.lhs_ii, 0.0, 1e-12);

  const CubeSet a = oracle::random_set(5, 0.4, 3);
  const std::vector<CoordSet> single{CoordSet::full(5)};
  const SectionalControlReport s = sectional_control(a, single);
  EXPECT_NEAR(s.lhs_i, 0.0, 1e-12);
  EXPECT_NEAR(s.lhs_ii, iso_excess(a).excess, 1e-12);
}

TEST(SectionalControl, HoldsForEveryPartition) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const CubeSet a = oracle::random_set(5, 0.15 + 0.1 * static_cast<double>(seed), seed + 77);
    if (a.empty()) continue;
    for (const auto& p : all_partitions(5)) {
      const SectionalControlReport r = sectional_control(a, p);
      EXPECT_TRUE(r.identity_holds);
      EXPECT_TRUE(r.pass);
      double lhs_i = 0.0;
      for (const CoordSet& block : p) {
        lhs_i += oracle::marginal_entropy(a, CoordSet::full(5).mask() & ~block.mask());
      }
      lhs_i -= static_cast<double>(p.size() - 1) * std::log2(static_cast<double>(a.size()));
      EXPECT_NEAR(r.lhs_i, lhs_i, 1e-9);
    }
  }
}

TEST(SectionalControl, RejectsInvalidPartitions) {
  const CubeSet a = two_cubes_q4();
  EXPECT_THROW((void)sectional_control(a, std::vector<CoordSet>{CoordSet::of({1, 2}), CoordSet::of({2, 3, 4})}),
               InputError);
  EXPECT_THROW((void)sectional_control(a, std::vector<CoordSet>{CoordSet::of({1, 2}), CoordSet::of({3})}), InputError);
  EXPECT_THROW((void)sectional_control(a, std::vector<CoordSet>{CoordSet::full(4), CoordSet()}), InputError);
}

TEST(Shearer, Examples) {
  const CubeSet a = oracle::random_set(5, 0.5, 8);
  const ShearerReport whole = shearer_check(a, std::vector<CoordSet>{CoordSet::full(5)}, 1);
  EXPECT_NEAR(whole.lhs, std::log2(static_cast<double>(a.size())), 1e-12);
  EXPECT_NEAR(whole.rhs, whole.lhs, 1e-12);
  EXPECT_TRUE(whole.pass);

  const ShearerReport bits =
      shearer_check(kAntipodal, std::vector<CoordSet>{CoordSet::of({1}), CoordSet::of({2}), CoordSet::of({3})}, 1);
  EXPECT_NEAR(bits.lhs, 3.0, 1e-12);
  EXPECT_NEAR(bits.rhs, 1.0, 1e-12);
  EXPECT_TRUE(bits.pass);

  EXPECT_THROW((void)shearer_check(kAntipodal, std::vector<CoordSet>{CoordSet::of({1, 2})}, 1), InputError);
  EXPECT_THROW((void)shearer_check(kAntipodal, std::vector<CoordSet>{CoordSet::full(3)}, 2), InputError);
}

TEST(Shearer, ComplementCoversOfPartitions) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const CubeSet a = oracle::random_set(5, 0.3, seed + 41);
    if (a.empty()) continue;
    for (const auto& p : all_partitions(5)) {
      if (p.size() < 2) continue;
      std::vector<CoordSet> cover;
      double lhs = 0.0;
      for (const CoordSet& block : p) {
        cover.push_back(block.complement(5));
        lhs += oracle::marginal_entropy(a, block.complement(5).mask());
      }
      const ShearerReport r = shearer_check(a, cover, static_cast<int>(p.size()) - 1);
      EXPECT_TRUE(r.pass);
      EXPECT_NEAR(r.lhs, lhs, 1e-9);
    }
  }
}

TEST(ProductStructure, Examples) {
  const ProductStructureReport prod = product_structure(kPairedQ3, CoordSet::of({3}), 0.25);
  EXPECT_NEAR(prod.mutual_information, 0.0, 1e-12);
  EXPECT_NEAR(prod.threshold, 4.0 / std::exp(1.0), 1e-9);
  EXPECT_EQ(prod.good_count, 4u);
  EXPECT_TRUE(prod.pass);

  const ProductStructureReport anti = product_structure(kAntipodal, CoordSet::of({1}), 0.5);
  EXPECT_NEAR(anti.mutual_information, 1.0, 1e-12);
  EXPECT_NEAR(anti.threshold, 2.0 / (std::exp(1.0) * 4.0), 1e-12);
  EXPECT_EQ(anti.good_count, 2u);
  EXPECT_TRUE(anti.pass);

  const CubeSet cube = subcube_members(SubCube::from_assignments(4, {{1, 1}}));
  const ProductStructureReport c = product_structure(cube, CoordSet::of({1, 4}), 0.1);
  EXPECT_EQ(c.good_count, cube.size());

  EXPECT_THROW((void)product_structure(kAntipodal, CoordSet::of({1}), 0.0), InputError);
  EXPECT_THROW((void)product_structure(kAntipodal, CoordSet::of({1}), 1.0), InputError);
}

TEST(ProductStructure, MatchesOracleCount) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 4 + static_cast<int>(seed % 4);
    const CubeSet a = oracle::random_set(n, 0.35, seed + 3000);
    if (a.empty()) continue;
    const std::uint32_t i_mask = 1U + static_cast<std::uint32_t>((seed * 7) % ((1U << n) - 2));
    const std::uint32_t j_mask = CoordSet::full(n).mask() & ~i_mask;
    const double eps = 0.2 + 0.03 * static_cast<double>(seed);
    const ProductStructureReport r = product_structure(a, CoordSet(i_mask), eps);
    std::uint64_t good = 0;
    a.for_each_member([&](Vertex x) {
      const double along_j = static_cast<double>(oracle::section(a, j_mask, oracle::gather(x, i_mask)).size());
      const double along_i = static_cast<double>(oracle::section(a, i_mask, oracle::gather(x, j_mask)).size());
      if (along_j * along_i >= r.threshold) ++good;
    });
    EXPECT_EQ(r.good_count, good);
    EXPECT_TRUE(r.pass);
  }
}
