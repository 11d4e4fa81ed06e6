#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isocube/cubeset.hpp"

namespace isocube {

/// Exact value num / 2^log2_den, kept in lowest terms.
class Dyadic {
 public:
  constexpr Dyadic() = default;
  Dyadic(std::uint64_t num, int log2_den);

  std::uint64_t numerator() const { return num_; }
  int log2_denominator() const { return log2_den_; }
  double to_double() const;
  std::string to_string() const;

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  std::uint64_t num_ = 0;
  int log2_den_ = 0;
};

struct IsoReport {
  std::uint64_t boundary = 0;  // |∂_e(A)|, exact
  double bound = 0.0;          // |A| log2(2^n / |A|)
  double excess = 0.0;         // boundary/|A| - log2(2^n/|A|)
  double alpha = 0.0;          // |A| / 2^n
};

/// Per-coordinate influences I_i(1_A) = disagreements[i-1] / 2^n, where a
/// disagreement is a vertex x with 1_A(x) != 1_A(x xor e_i).
struct InfluenceProfile {
  int n = 0;
  std::vector<std::uint64_t> disagreements;

  Dyadic influence(int coord) const;
  Dyadic total() const;
  int max_coordinate() const;  // smallest index among maximizers; 0 when n = 0
  Dyadic max_influence() const;
};

struct TalagrandReport {
  double sum = 0.0;       // sum_i I_i / (1 - log2 I_i), zero terms skipped
  double variance = 0.0;  // alpha (1 - alpha)
  double ratio = 0.0;     // sum / variance
};

enum class SearchMode { Exhaustive, Greedy };

struct BestSubcube {
  SubCube cube;
  std::uint64_t distance = 0;  // |A △ C|
};

struct EllisReport {
  double excess = 0.0;
  double relative_distance = 0.0;  // |A △ C*| / |A|
  double bound = 0.0;              // 3 eps / log2(1/eps); +inf when eps >= 1
  bool applicable = false;         // 0 < eps <= eps0
  bool holds = true;               // distance within bound when applicable; exact when eps = 0
  SubCube cube;
};

inline constexpr int kExhaustiveSubcubeMaxDim = 14;
inline constexpr int kMinBoundaryOracleMaxDim = 4;
inline constexpr double kInequalitySlack = 1e-9;

/// Boundary edge count per direction; entry i-1 is direction i.
std::vector<std::uint64_t> boundary_by_direction(const CubeSet& a);

/// Boundary edges whose direction lies in `dirs` (all directions by default).
std::uint64_t edge_boundary(const CubeSet& a, std::optional<CoordSet> dirs = std::nullopt);

/// boundary/size - log2(2^n/size), for size > 0.
double isoperimetric_excess(std::uint64_t boundary, std::uint64_t size, int n);

/// Throws DomainError for the empty set.
IsoReport iso_excess(const CubeSet& a);

InfluenceProfile influence_profile(const CubeSet& a);

/// Throws DomainError when `a` is empty or full.
TalagrandReport talagrand_ratio(const CubeSet& a);

/// Subcube nearest to `a` in symmetric difference. Exhaustive mode scans all
/// 3^n subcubes (n <= 14, CapabilityError beyond) and breaks ties with
/// canonical_less; greedy mode fixes one coordinate at a time while that
/// strictly improves the distance.
BestSubcube best_subcube(const CubeSet& a, SearchMode mode);

/// Minimum edge boundary over all m-subsets of Q_n by full enumeration of
/// the 2^(2^n) subsets (n <= 4, CapabilityError beyond).
std::uint64_t min_boundary_oracle(int n, std::uint64_t m);

/// The same minimum for every m in [0, 2^n], from one enumeration.
std::vector<std::uint64_t> min_boundary_table(int n);

/// Compares the distance to the best subcube against 3 eps / log2(1/eps)
/// where eps is the isoperimetric excess of `a`.
EllisReport ellis_check(const CubeSet& a, double eps0 = 0.05);

}  // namespace isocube
