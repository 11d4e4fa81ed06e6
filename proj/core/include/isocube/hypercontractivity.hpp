#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "isocube/cubeset.hpp"

namespace isocube {

/// Real-valued function on {0,1}^n, one finite value per vertex index.
class PseudoBooleanFn {
 public:
  PseudoBooleanFn() : PseudoBooleanFn(0, std::vector<double>{0.0}) {}
  /// Throws InputError unless values.size() == 2^n and every value is finite.
  PseudoBooleanFn(int n, std::vector<double> values);

  static PseudoBooleanFn constant(int n, double c);
  static PseudoBooleanFn indicator(const CubeSet& a);

  int dim() const { return n_; }
  std::span<const double> values() const { return values_; }
  double operator[](Vertex v) const { return values_[v]; }

  friend bool operator==(const PseudoBooleanFn&, const PseudoBooleanFn&) = default;

 private:
  int n_ = 0;
  std::vector<double> values_;
};

/// (2^-n sum |f|^p)^(1/p); p = +inf gives max |f|. Throws InputError for p < 1.
double lp_norm(const PseudoBooleanFn& f, double p);

/// <f, g> = 2^-n sum f g.
double inner_product(const PseudoBooleanFn& f, const PseudoBooleanFn& g);

/// S_ell f(x): average of f over the Hamming sphere of radius ell about x.
/// Sums run in ascending offset order so results are bit-reproducible.
PseudoBooleanFn spherical_average(const PseudoBooleanFn& f, int ell);

/// S = 2^-d sum_ell C(d, ell) S_ell: resample a uniformly random d-subset of
/// coordinates.
PseudoBooleanFn binomial_mixture(const PseudoBooleanFn& f, int d);

/// ell <= 0.15 n, checked in integers.
constexpr bool within_polyanskiy_range(int n, int ell) { return ell >= 0 && 100 * ell <= 15 * n; }

struct PolyanskiyReport {
  double lhs = 0.0;  // ||S_ell f||_2
  double rhs = 0.0;  // sqrt(2) ||f||_q, q = 1 + (1 - 2 ell/n)^2
  double q = 2.0;
  bool pass = false;
};

/// Throws DomainError when ell lies outside [0, 0.15 n].
PolyanskiyReport polyanskiy_check(const PseudoBooleanFn& f, int ell);

enum class ExpectationMode { Exact, Sampled };

struct SparseSectionReport {
  double expectation = 0.0;  // E_{x,I} |A^I_{x_J}|
  double bound = 0.0;        // 2 alpha^(d/8n) 2^d
  std::optional<bool> pass;  // set in exact mode only
  double std_error = 0.0;    // sampled mode
  std::uint64_t samples = 0;
};

/// Expected size of the section through a uniform member x of A along a
/// uniform d-subset I. Requires nonempty A and 1 <= d <= 0.15 n
/// (DomainError otherwise). Sampled mode draws (x, I) i.i.d. from `seed` and
/// never decides pass/fail.
SparseSectionReport sparse_section_expectation(const CubeSet& a, int d, ExpectationMode mode,
                                               std::uint64_t samples = 0, std::uint64_t seed = 0);

/// The same expectation through the operator route 2^d alpha^-1 <1_A, S 1_A>.
double sparse_section_operator_form(const CubeSet& a, int d);

}  // namespace isocube
