#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "isocube/cubeset.hpp"
#include "isocube/isoperimetry.hpp"

namespace isocube {

struct MaxInfluence {
  int coord = 0;        // smallest index among maximizers
  Dyadic influence;     // I_j(1_A)
  double ratio = 0.0;   // I_j 2^n / |A|
};

/// Throws DomainError for constant sets.
MaxInfluence max_influence_coordinate(const CubeSet& a);

/// Exact accounting for splitting A along coordinate j into the halves
/// A^- and A^+, relabelled so that A^- is the lighter one.
struct SplitBookkeeping {
  int split_coord = 0;
  int minus_value = 0;            // value of x_j on the A^- side
  std::uint64_t minus_size = 0;   // |A^-|
  std::uint64_t plus_size = 0;    // |A^+|
  double gamma = 0.0;             // |A^-| / |A|, at most 1/2
  double k = 0.0;                 // excess of A, recomputed exactly
  double k_minus = 0.0;           // excess of A^- inside Q_{n-1}; 0 when A^- is empty
  double k_plus = 0.0;
  double b_j = 0.0;               // direction-j boundary edges / |A| = |A^- △ A^+| / |A|
  double h_gamma = 0.0;           // binary entropy H(gamma)
  double k_tilde = 0.0;           // K - (H(gamma) - 2 gamma) - (b_j - (1 - 2 gamma))
  double delta = 0.0;             // gamma K^- / K~ when K~ > 0, else gamma
  bool degenerate = false;        // gamma == 0

  double entropy_deficit() const { return h_gamma - 2.0 * gamma; }
  double influence_deficit() const { return b_j - (1.0 - 2.0 * gamma); }
  /// gamma K^- + (1 - gamma) K^+
  double weighted_halves() const { return gamma * k_minus + (1.0 - gamma) * k_plus; }
};

/// Requires nonempty A and 1 <= j <= n.
SplitBookkeeping split_bookkeeping(const CubeSet& a, int j);

struct DecomposeConfig {
  double kappa0 = 0.125;    // excess threshold for the single-subcube base case
  int exh_dim = 12;         // exhaustive subcube search up to this local dimension
  double drop_frac = 0.5;   // small-side drop when |A^-| <= drop_frac * budget
  double bound_constant = 1.0;  // C in the reported 2^(2^(C (K/eps)^2))
  bool cleanup = true;      // merge twin cubes and regrow cubes into uncovered members afterwards
};

enum class NodeCase { B1, B2, B3, S1, S2 };

std::string_view to_string(NodeCase c);

struct TraceNode {
  NodeCase kind = NodeCase::B1;
  SubCube region;              // global region this node works in
  std::uint64_t size = 0;      // |A| restricted to the region
  std::uint64_t budget = 0;    // integer slack allotted to this node
  std::uint64_t error = 0;     // |A △ cover| inside the region
  std::optional<SplitBookkeeping> split;  // S1/S2, coord in global numbering
  bool base_rejected = false;  // a B3 candidate existed but exceeded the budget
  std::vector<TraceNode> children;  // x_j = 0 side first
};

struct DecompositionResult {
  int n = 0;
  std::vector<SubCube> cubes;
  std::uint64_t sym_diff = 0;
  std::uint64_t budget = 0;   // floor(eps |A|)
  double eps_achieved = 0.0;  // sym_diff / |A| (0 for empty A)
  double root_excess = 0.0;   // K of A, 0 for empty or full A
  double paper_bound_log2_log2 = 0.0;  // C (K/eps)^2
  double paper_bound_L = 0.0;          // 2^(2^(...)), +inf once it overflows
  std::uint64_t cleanup_merges = 0;     // twin pairs fused after the recursion
  std::uint64_t cleanup_recovered = 0;  // members won back by regrowing cubes
  TraceNode trace;  // the recursion alone; its error exceeds sym_diff by cleanup_recovered
};

/// Approximates `a` by pairwise disjoint subcubes with |A △ ∪C| <= eps |A|.
/// Throws InputError unless 0 < eps <= 1.
DecompositionResult decompose(const CubeSet& a, double eps, const DecomposeConfig& config = {});

enum class VerifyReason { Ok, DimensionMismatch, Overlap, SymDiffMismatch, Budget };

std::string_view to_string(VerifyReason r);

struct VerifyOutcome {
  bool pass = false;
  VerifyReason reason = VerifyReason::Ok;
  std::uint64_t sym_diff = 0;  // recomputed by enumeration
};

/// Independent checker: recomputes disjointness and the symmetric difference
/// by enumerating every vertex.
VerifyOutcome verify_decomposition(const CubeSet& a, const DecompositionResult& result, double eps);

}  // namespace isocube
