#include "isocube/isoperimetry.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>

#include "isocube/error.hpp"

namespace isocube {

// --- Dyadic -----------------------------------------------------------------

Dyadic::Dyadic(std::uint64_t num, int log2_den) : num_(num), log2_den_(log2_den) {
  if (num_ == 0) {
    log2_den_ = 0;
    return;
  }
  const int shift = std::min(std::countr_zero(num_), log2_den_);
  num_ >>= shift;
  log2_den_ -= shift;
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(num_), -log2_den_); }

std::string Dyadic::to_string() const {
  if (log2_den_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(std::uint64_t{1} << log2_den_);
}

__extension__ using u128 = unsigned __int128;

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  // Bring both to the larger denominator; values here never exceed 2^40.
  const int den = std::max(a.log2_den_, b.log2_den_);
  const auto an = static_cast<u128>(a.num_) << (den - a.log2_den_);
  const auto bn = static_cast<u128>(b.num_) << (den - b.log2_den_);
  if (an < bn) return std::strong_ordering::less;
  if (an > bn) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// --- boundaries -------------------------------------------------------------

namespace {

// Positions whose bit b is zero, for in-word partners (b < 6).
constexpr std::array<std::uint64_t, 6> kLowHalf = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

std::uint64_t direction_count(std::span<const std::uint64_t> words, int bit) {
  std::uint64_t total = 0;
  if (bit < 6) {
    const int shift = 1 << bit;
    for (std::uint64_t w : words) total += std::popcount((w ^ (w >> shift)) & kLowHalf[bit]);
    return total;
  }
  const std::size_t stride = std::size_t{1} << (bit - 6);
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (k & stride) continue;
    total += std::popcount(words[k] ^ words[k + stride]);
  }
  return total;
}

}  // namespace

std::vector<std::uint64_t> boundary_by_direction(const CubeSet& a) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(a.dim()));
  for (int b = 0; b < a.dim(); ++b) out[static_cast<std::size_t>(b)] = direction_count(a.words(), b);
  return out;
}

std::uint64_t edge_boundary(const CubeSet& a, std::optional<CoordSet> dirs) {
  const CoordSet chosen = dirs.value_or(CoordSet::full(a.dim()));
  if (!chosen.within(a.dim())) throw InputError("boundary directions outside [1, n]");
  std::uint64_t total = 0;
  for (int c : chosen.to_list()) total += direction_count(a.words(), c - 1);
  return total;
}

double isoperimetric_excess(std::uint64_t boundary, std::uint64_t size, int n) {
  const double s = static_cast<double>(size);
  return static_cast<double>(boundary) / s - (static_cast<double>(n) - std::log2(s));
}

IsoReport iso_excess(const CubeSet& a) {
  if (a.empty()) throw DomainError("isoperimetric excess is undefined for the empty set");
  IsoReport r;
  r.boundary = edge_boundary(a);
  const double s = static_cast<double>(a.size());
  r.bound = s * (static_cast<double>(a.dim()) - std::log2(s));
  r.excess = isoperimetric_excess(r.boundary, a.size(), a.dim());
  r.alpha = a.density();
  return r;
}

// --- influences -------------------------------------------------------------

Dyadic InfluenceProfile::influence(int coord) const {
  if (coord < 1 || coord > n) throw InputError("influence coordinate outside [1, n]");
  return Dyadic(disagreements[static_cast<std::size_t>(coord - 1)], n);
}

Dyadic InfluenceProfile::total() const {
  std::uint64_t sum = 0;
  for (std::uint64_t d : disagreements) sum += d;
  return Dyadic(sum, n);
}

int InfluenceProfile::max_coordinate() const {
  if (disagreements.empty()) return 0;
  const auto it = std::max_element(disagreements.begin(), disagreements.end());
  return static_cast<int>(it - disagreements.begin()) + 1;
}

Dyadic InfluenceProfile::max_influence() const {
  const int j = max_coordinate();
  return j == 0 ? Dyadic() : influence(j);
}

InfluenceProfile influence_profile(const CubeSet& a) {
  InfluenceProfile p;
  p.n = a.dim();
  p.disagreements = boundary_by_direction(a);
  // Each boundary edge has two endpoints that disagree.
  for (auto& d : p.disagreements) d *= 2;
  return p;
}

TalagrandReport talagrand_ratio(const CubeSet& a) {
  if (a.is_constant()) throw DomainError("Talagrand ratio is undefined for a constant set (variance 0)");
  const InfluenceProfile p = influence_profile(a);
  TalagrandReport r;
  for (int i = 1; i <= p.n; ++i) {
    const double inf = p.influence(i).to_double();
    if (inf > 0.0) r.sum += inf / (1.0 - std::log2(inf));
  }
  const double alpha = a.density();
  r.variance = alpha * (1.0 - alpha);
  r.ratio = r.sum / r.variance;
  return r;
}

// --- best subcube -----------------------------------------------------------

namespace {

SubCube decode_ternary(int n, std::size_t t) {
  std::uint32_t mask = 0;
  Vertex pattern = 0;
  for (int k = 0; k < n; ++k) {
    const std::size_t digit = t % 3;
    t /= 3;
    if (digit != 2) {
      mask |= std::uint32_t{1} << k;
      if (digit == 1) pattern |= Vertex{1} << k;
    }
  }
  return SubCube(n, CoordSet(mask), pattern);
}

BestSubcube exhaustive_best(const CubeSet& a) {
  const int n = a.dim();
  std::size_t total = 1;
  for (int k = 0; k < n; ++k) total *= 3;

  // hits[t] = |A ∩ C_t| with digit 0/1 = fixed value, 2 = free.
  std::vector<std::uint32_t> hits(total, 0);
  a.for_each_member([&](Vertex v) {
    std::size_t t = 0;
    std::size_t place = 1;
    for (int k = 0; k < n; ++k, place *= 3) {
      if ((v >> k) & 1U) t += place;
    }
    hits[t] = 1;
  });
  std::size_t place = 1;
  for (int k = 0; k < n; ++k, place *= 3) {
    for (std::size_t t = 0; t < total; ++t) {
      if ((t / place) % 3 == 2) hits[t] = hits[t - 2 * place] + hits[t - place];
    }
  }

  std::vector<int> free_count(total, 0);
  place = 1;
  for (int k = 0; k < n; ++k, place *= 3) {
    for (std::size_t t = 0; t < total; ++t) {
      if ((t / place) % 3 == 2) ++free_count[t];
    }
  }

  std::uint64_t best_distance = std::numeric_limits<std::uint64_t>::max();
  std::size_t best_t = 0;
  for (std::size_t t = 0; t < total; ++t) {
    const std::uint64_t size = std::uint64_t{1} << free_count[t];
    const std::uint64_t dist = a.size() + size - 2 * static_cast<std::uint64_t>(hits[t]);
    if (dist < best_distance) {
      best_distance = dist;
      best_t = t;
    } else if (dist == best_distance && canonical_less(decode_ternary(n, t), decode_ternary(n, best_t))) {
      best_t = t;
    }
  }
  return {decode_ternary(n, best_t), best_distance};
}

BestSubcube greedy_best(const CubeSet& a) {
  const int n = a.dim();
  SubCube current = SubCube::whole(n);
  std::uint64_t distance = current.size() - a.size();
  for (;;) {
    // hits[2*(c-1)+b] = |A ∩ C ∩ {x_c = b}|
    std::vector<std::uint64_t> hits(2 * static_cast<std::size_t>(n), 0);
    a.for_each_member([&](Vertex v) {
      if (!current.contains(v)) return;
      for (int k = 0; k < n; ++k) ++hits[2 * static_cast<std::size_t>(k) + ((v >> k) & 1U)];
    });
    std::uint64_t best = distance;
    int best_coord = 0;
    int best_bit = 0;
    const std::uint64_t half = current.size() / 2;
    for (int c = 1; c <= n; ++c) {
      if (current.fixed().contains(c)) continue;
      for (int b = 0; b <= 1; ++b) {
        const std::uint64_t in = hits[2 * static_cast<std::size_t>(c - 1) + static_cast<std::size_t>(b)];
        const std::uint64_t dist = a.size() + half - 2 * in;
        if (dist < best) {
          best = dist;
          best_coord = c;
          best_bit = b;
        }
      }
    }
    if (best_coord == 0) break;
    current = current.fix(best_coord, best_bit);
    distance = best;
  }
  return {current, distance};
}

}  // namespace

BestSubcube best_subcube(const CubeSet& a, SearchMode mode) {
  if (mode == SearchMode::Exhaustive) {
    if (a.dim() > kExhaustiveSubcubeMaxDim) {
      throw CapabilityError("exhaustive subcube search supports n <= 14 (3^n candidates); use greedy mode");
    }
    return exhaustive_best(a);
  }
  return greedy_best(a);
}

// --- minimum boundary oracle ------------------------------------------------

std::vector<std::uint64_t> min_boundary_table(int n) {
  if (n < 0) throw InputError("dimension must be nonnegative");
  if (n > kMinBoundaryOracleMaxDim) {
    throw CapabilityError("minimum-boundary oracle enumerates all 2^(2^n) subsets and supports n <= 4");
  }
  const std::uint32_t vertices = 1U << n;
  std::vector<std::uint64_t> best(vertices + 1, std::numeric_limits<std::uint64_t>::max());
  const std::uint64_t subsets = std::uint64_t{1} << vertices;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::uint64_t boundary = 0;
    for (std::uint32_t x = 0; x < vertices; ++x) {
      for (int k = 0; k < n; ++k) {
        const std::uint32_t y = x ^ (1U << k);
        if (x < y && (((mask >> x) ^ (mask >> y)) & 1U)) ++boundary;
      }
    }
    auto& slot = best[static_cast<std::size_t>(std::popcount(mask))];
    slot = std::min(slot, boundary);
  }
  return best;
}

std::uint64_t min_boundary_oracle(int n, std::uint64_t m) {
  if (n >= 0 && n <= kMinBoundaryOracleMaxDim && m > (std::uint64_t{1} << n)) {
    throw InputError("subset size " + std::to_string(m) + " exceeds 2^n");
  }
  return min_boundary_table(n)[static_cast<std::size_t>(m)];
}

// --- Ellis check ------------------------------------------------------------

EllisReport ellis_check(const CubeSet& a, double eps0) {
  const IsoReport iso = iso_excess(a);
  const SearchMode mode = a.dim() <= kExhaustiveSubcubeMaxDim ? SearchMode::Exhaustive : SearchMode::Greedy;
  const BestSubcube best = best_subcube(a, mode);

  EllisReport r;
  // Clamp float noise around an exact extremal set.
  r.excess = std::abs(iso.excess) < 1e-12 ? 0.0 : iso.excess;
  r.relative_distance = static_cast<double>(best.distance) / static_cast<double>(a.size());
  r.cube = best.cube;
  const double eps = r.excess;
  if (eps <= 0.0) {
    r.bound = 0.0;
  } else if (eps >= 1.0) {
    r.bound = std::numeric_limits<double>::infinity();
  } else {
    r.bound = 3.0 * eps / std::log2(1.0 / eps);
  }
  r.applicable = eps > 0.0 && eps <= eps0;
  if (eps <= 0.0) {
    r.holds = best.distance == 0;
  } else if (r.applicable) {
    r.holds = r.relative_distance <= r.bound + kInequalitySlack;
  }
  return r;
}

}  // namespace isocube
