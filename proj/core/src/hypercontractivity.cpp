#include "isocube/hypercontractivity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "isocube/bits.hpp"
#include "isocube/error.hpp"
#include "isocube/isoperimetry.hpp"
#include "isocube/random.hpp"

namespace isocube {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

/// All n-bit masks with popcount k, ascending.
std::vector<std::uint32_t> masks_with_popcount(int n, int k) {
  std::vector<std::uint32_t> out;
  if (k == 0) return {0};
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint32_t m = bits::low_mask(k); m < limit; m = bits::next_same_popcount(m)) {
    out.push_back(m);
    if (m == (bits::low_mask(k) << (n - k))) break;
  }
  return out;
}

void check_same_dim(const PseudoBooleanFn& f, const PseudoBooleanFn& g) {
  if (f.dim() != g.dim()) throw InputError("functions live on cubes of different dimension");
}

void check_sparse_range(const CubeSet& a, int d) {
  if (a.empty()) throw DomainError("sparse-section expectation needs a nonempty set");
  if (d < 1 || !within_polyanskiy_range(a.dim(), d)) {
    throw DomainError("section dimension d = " + std::to_string(d) + " outside [1, 0.15 n] for n = " +
                      std::to_string(a.dim()));
  }
}

}  // namespace

PseudoBooleanFn::PseudoBooleanFn(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (n < 0 || n > kMaxDim) throw InputError("dimension outside [0, 24]");
  if (values_.size() != (std::size_t{1} << n)) {
    throw InputError("function needs 2^n = " + std::to_string(std::size_t{1} << n) + " values, got " +
                     std::to_string(values_.size()));
  }
  for (std::size_t v = 0; v < values_.size(); ++v) {
    if (!std::isfinite(values_[v])) throw InputError("non-finite value at vertex " + std::to_string(v));
  }
}

PseudoBooleanFn PseudoBooleanFn::constant(int n, double c) {
  if (n < 0 || n > kMaxDim) throw InputError("dimension outside [0, 24]");
  return PseudoBooleanFn(n, std::vector<double>(std::size_t{1} << n, c));
}

PseudoBooleanFn PseudoBooleanFn::indicator(const CubeSet& a) {
  std::vector<double> values(a.universe_size(), 0.0);
  a.for_each_member([&](Vertex v) { values[v] = 1.0; });
  return PseudoBooleanFn(a.dim(), std::move(values));
}

double lp_norm(const PseudoBooleanFn& f, double p) {
  if (!(p >= 1.0)) throw InputError("L_p norm needs p >= 1");
  const auto vals = f.values();
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : vals) m = std::max(m, std::abs(x));
    return m;
  }
  double sum = 0.0;
  for (double x : vals) sum += std::pow(std::abs(x), p);
  return std::pow(sum / static_cast<double>(vals.size()), 1.0 / p);
}

double inner_product(const PseudoBooleanFn& f, const PseudoBooleanFn& g) {
  check_same_dim(f, g);
  double sum = 0.0;
  for (std::size_t v = 0; v < f.values().size(); ++v) sum += f.values()[v] * g.values()[v];
  return sum / static_cast<double>(f.values().size());
}

PseudoBooleanFn spherical_average(const PseudoBooleanFn& f, int ell) {
  const int n = f.dim();
  if (ell < 0 || ell > n) throw InputError("sphere radius " + std::to_string(ell) + " outside [0, n]");
  const auto offsets = masks_with_popcount(n, ell);
  const double norm = binomial(n, ell);
  const auto vals = f.values();
  std::vector<double> out(vals.size());
  for (std::size_t v = 0; v < vals.size(); ++v) {
    double sum = 0.0;
    for (std::uint32_t m : offsets) sum += vals[v ^ m];
    out[v] = sum / norm;
  }
  return PseudoBooleanFn(n, std::move(out));
}

PseudoBooleanFn binomial_mixture(const PseudoBooleanFn& f, int d) {
  const int n = f.dim();
  if (d < 0 || d > n) throw InputError("mixture depth outside [0, n]");
  std::vector<double> out(f.values().size(), 0.0);
  const double scale = std::ldexp(1.0, -d);
  for (int ell = 0; ell <= d; ++ell) {
    const PseudoBooleanFn s = spherical_average(f, ell);
    const double w = binomial(d, ell) * scale;
    for (std::size_t v = 0; v < out.size(); ++v) out[v] += w * s.values()[v];
  }
  return PseudoBooleanFn(n, std::move(out));
}

PolyanskiyReport polyanskiy_check(const PseudoBooleanFn& f, int ell) {
  const int n = f.dim();
  if (!within_polyanskiy_range(n, ell)) {
    throw DomainError("radius " + std::to_string(ell) + " outside [0, 0.15 n]; the inequality makes no claim there");
  }
  PolyanskiyReport r;
  const double shrink = n == 0 ? 1.0 : 1.0 - 2.0 * static_cast<double>(ell) / static_cast<double>(n);
  r.q = 1.0 + shrink * shrink;
  r.lhs = lp_norm(spherical_average(f, ell), 2.0);
  r.rhs = std::sqrt(2.0) * lp_norm(f, r.q);
  r.pass = r.lhs <= r.rhs + kInequalitySlack;
  return r;
}

SparseSectionReport sparse_section_expectation(const CubeSet& a, int d, ExpectationMode mode,
                                               std::uint64_t samples, std::uint64_t seed) {
  check_sparse_range(a, d);
  const int n = a.dim();
  SparseSectionReport r;
  r.bound = 2.0 * std::pow(a.density(), static_cast<double>(d) / (8.0 * n)) * std::ldexp(1.0, d);

  if (mode == ExpectationMode::Exact) {
    // For each d-subset I, sum over x in A of |A^I_{x_J}| = sum over sections of count^2.
    const auto subsets = masks_with_popcount(n, d);
    std::vector<std::uint32_t> counts(a.universe_size(), 0);
    const std::vector<Vertex> members = a.members();
    std::uint64_t total = 0;
    for (std::uint32_t i_mask : subsets) {
      for (Vertex v : members) ++counts[v & ~i_mask];
      for (Vertex v : members) total += counts[v & ~i_mask];
      for (Vertex v : members) counts[v & ~i_mask] = 0;
    }
    r.expectation = static_cast<double>(total) /
                    (static_cast<double>(a.size()) * static_cast<double>(subsets.size()));
    r.pass = r.expectation <= r.bound + kInequalitySlack;
    r.samples = static_cast<std::uint64_t>(subsets.size()) * a.size();
    return r;
  }

  if (samples == 0) throw InputError("sampled mode needs a positive sample count");
  Rng rng(seed);
  const std::vector<Vertex> members = a.members();
  std::vector<int> coords(static_cast<std::size_t>(n));
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const Vertex x = members[rng.below(members.size())];
    std::iota(coords.begin(), coords.end(), 0);
    std::uint32_t i_mask = 0;
    for (int k = 0; k < d; ++k) {
      const auto pick = static_cast<std::size_t>(k) + rng.below(static_cast<std::uint64_t>(n - k));
      std::swap(coords[static_cast<std::size_t>(k)], coords[pick]);
      i_mask |= std::uint32_t{1} << coords[static_cast<std::size_t>(k)];
    }
    const Vertex base = x & ~i_mask;
    double size = 0.0;
    for (std::uint32_t z = 0; z < (1U << d); ++z) {
      if (a.contains(base | bits::expand(z, i_mask))) size += 1.0;
    }
    sum += size;
    sum_sq += size * size;
  }
  const double count = static_cast<double>(samples);
  r.expectation = sum / count;
  const double var = samples > 1 ? std::max(0.0, (sum_sq - count * r.expectation * r.expectation) / (count - 1.0)) : 0.0;
  r.std_error = std::sqrt(var / count);
  r.samples = samples;
  return r;
}

double sparse_section_operator_form(const CubeSet& a, int d) {
  check_sparse_range(a, d);
  const PseudoBooleanFn mixed = binomial_mixture(PseudoBooleanFn::indicator(a), d);
  // alpha^-1 <1_A, S 1_A> = |A|^-1 sum_{w in A} S 1_A(w)
  double sum = 0.0;
  a.for_each_member([&](Vertex w) { sum += mixed[w]; });
  return std::ldexp(1.0, d) * sum / static_cast<double>(a.size());
}

}  // namespace isocube
