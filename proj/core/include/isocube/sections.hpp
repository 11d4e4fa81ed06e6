#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "isocube/cubeset.hpp"

namespace isocube {

/// One nonempty section A^I_y. `y` is the packed assignment over J = [n] \ I
/// (bit k holds the value of the k-th smallest coordinate of J).
struct SectionEntry {
  std::uint32_t y = 0;
  std::uint64_t count = 0;     // |A^I_y|
  std::uint64_t boundary = 0;  // |∂^I_e(A^I_y)|, edges inside the section's copy of {0,1}^I
  double alpha = 0.0;          // count / |A|
  double excess = 0.0;         // K^I_y, excess of the section within {0,1}^I
};

/// Section distribution of a nonempty set over a coordinate split. Entries
/// are sorted by y; empty sections are omitted.
struct SectionTable {
  int n = 0;
  CoordSet i_coords;
  std::uint64_t set_size = 0;
  std::vector<SectionEntry> entries;
  double entropy = 0.0;          // H(alpha^I) in bits
  double weighted_excess = 0.0;  // K^I = sum_y alpha^I_y K^I_y

  /// Total I-direction boundary, sum over sections.
  std::uint64_t i_boundary() const;
};

struct SectionalControlReport {
  double k = 0.0;       // isoperimetric excess of A
  double lhs_i = 0.0;   // sum_m H(alpha^{I_m}) - (M-1) log2|A|
  double lhs_ii = 0.0;  // sum_m K^{I_m}
  bool identity_holds = false;  // sum_m |∂^{I_m}_e(A)| == |∂_e(A)|
  bool pass = false;
};

struct ShearerReport {
  double lhs = 0.0;  // sum over the cover of the marginal entropies
  double rhs = 0.0;  // D log2|A|
  bool pass = false;
};

struct ProductStructureReport {
  double mutual_information = 0.0;
  double threshold = 0.0;  // |A| / (e 2^(K/eps)) with K = mutual information
  std::uint64_t good_count = 0;
  bool pass = false;
};

/// Throws DomainError for empty `a`, InputError for coordinates outside [n].
SectionTable section_table(const CubeSet& a, CoordSet i_coords);

/// Entropy in bits of a probability vector; 0 log 0 = 0. Throws InputError
/// on negative mass or when the total differs from 1 by more than 1e-12.
double entropy(std::span<const double> dist);

/// Entropy of the distribution count_k / sum(counts), computed from exact counts.
double entropy_of_counts(std::span<const std::uint64_t> counts);

/// H(alpha^I) + H(alpha^J) - log2|A|. I must be a proper nonempty subset.
double mutual_information(const CubeSet& a, CoordSet i_coords);

/// Both parts of the partitioning inequality and the directional-boundary
/// decomposition identity. Blocks must be nonempty, disjoint and cover [n].
SectionalControlReport sectional_control(const CubeSet& a, std::span<const CoordSet> partition);

/// Shearer's inequality for X uniform on A. Throws InputError when some
/// coordinate of [n] lies in fewer than `d_cover` members of `cover`.
ShearerReport shearer_check(const CubeSet& a, std::span<const CoordSet> cover, int d_cover);

/// Counts x in A whose orthogonal sections satisfy
/// |A^J_{x_I}| |A^I_{x_J}| >= |A| / (e 2^(K/eps)), K the mutual information,
/// and checks at least (1 - eps)|A| such x exist.
ProductStructureReport product_structure(const CubeSet& a, CoordSet i_coords, double eps);

}  // namespace isocube
