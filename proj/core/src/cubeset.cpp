#include "isocube/cubeset.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "isocube/bits.hpp"
#include "isocube/error.hpp"
#include "isocube/random.hpp"

namespace isocube {

namespace {

void check_dim(int n) {
  if (n < 0 || n > kMaxDim) {
    throw InputError("dimension " + std::to_string(n) + " outside [0, " + std::to_string(kMaxDim) + "]");
  }
}

std::uint64_t tail_mask(int n) {
  return n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << n)) - 1;
}

std::uint64_t count_bits(const std::vector<std::uint64_t>& words) {
  std::uint64_t total = 0;
  for (std::uint64_t w : words) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

}  // namespace

CoordSet CoordSet::of(std::initializer_list<int> coords) {
  return from_list(std::span<const int>(coords.begin(), coords.size()));
}

CoordSet CoordSet::from_list(std::span<const int> coords) {
  std::uint32_t mask = 0;
  for (int c : coords) {
    if (c < 1 || c > kMaxDim) throw InputError("coordinate " + std::to_string(c) + " outside [1, 24]");
    mask |= std::uint32_t{1} << (c - 1);
  }
  return CoordSet(mask);
}

std::vector<int> CoordSet::to_list() const {
  std::vector<int> out;
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

// --- CubeSet ----------------------------------------------------------------

CubeSet::CubeSet(int n, std::vector<std::uint64_t> words)
    : n_(n), size_(count_bits(words)), words_(std::move(words)) {}

CubeSet CubeSet::empty(int n) {
  check_dim(n);
  return CubeSet(n, std::vector<std::uint64_t>(word_count(n), 0));
}

CubeSet CubeSet::full(int n) {
  check_dim(n);
  std::vector<std::uint64_t> words(word_count(n), ~std::uint64_t{0});
  words.back() &= tail_mask(n);
  return CubeSet(n, std::move(words));
}

CubeSet CubeSet::from_vertices(int n, std::span<const Vertex> vertices) {
  check_dim(n);
  CubeSetBuilder builder(n);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (Vertex v : vertices) {
    if (v >= total) {
      throw InputError("vertex index " + std::to_string(v) + " outside [0, " + std::to_string(total) + ")");
    }
    builder.insert(v);
  }
  return std::move(builder).build();
}

CubeSet CubeSet::from_words(int n, std::vector<std::uint64_t> words) {
  check_dim(n);
  if (words.size() != word_count(n)) {
    throw InputError("membership table has " + std::to_string(words.size()) + " words, expected " +
                     std::to_string(word_count(n)));
  }
  if ((words.back() & ~tail_mask(n)) != 0) throw InputError("membership table has bits beyond 2^n");
  return CubeSet(n, std::move(words));
}

std::vector<Vertex> CubeSet::members() const {
  std::vector<Vertex> out;
  out.reserve(size_);
  for_each_member([&](Vertex v) { out.push_back(v); });
  return out;
}

CubeSet CubeSet::complement() const {
  std::vector<std::uint64_t> words(words_.size());
  std::transform(words_.begin(), words_.end(), words.begin(), [](std::uint64_t w) { return ~w; });
  words.back() &= tail_mask(n_);
  return CubeSet(n_, std::move(words));
}

std::uint64_t CubeSet::symmetric_difference_size(const CubeSet& other) const {
  if (other.n_ != n_) throw InputError("dimension mismatch in symmetric difference");
  std::uint64_t total = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) total += std::popcount(words_[w] ^ other.words_[w]);
  return total;
}

std::uint64_t CubeSet::intersection_size(const CubeSet& other) const {
  if (other.n_ != n_) throw InputError("dimension mismatch in intersection");
  std::uint64_t total = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) total += std::popcount(words_[w] & other.words_[w]);
  return total;
}

CubeSetBuilder::CubeSetBuilder(int n) : n_(n) {
  check_dim(n);
  words_.assign(CubeSet::word_count(n), 0);
}

CubeSet CubeSetBuilder::build() && { return CubeSet::from_words(n_, std::move(words_)); }

// --- SubCube ----------------------------------------------------------------

SubCube::SubCube(int n, CoordSet fixed, Vertex pattern) : n_(n), fixed_(fixed), pattern_(pattern) {
  check_dim(n);
  if (!fixed.within(n)) throw InputError("subcube fixes a coordinate outside [1, n]");
  if ((pattern & ~fixed.mask()) != 0) throw InputError("subcube pattern sets a free coordinate");
}

SubCube SubCube::from_assignments(int n, std::span<const std::pair<int, int>> fixed) {
  std::uint32_t mask = 0;
  Vertex pattern = 0;
  for (auto [coord, bit] : fixed) {
    if (coord < 1 || coord > n) throw InputError("fixed coordinate " + std::to_string(coord) + " outside [1, n]");
    if (bit != 0 && bit != 1) throw InputError("fixed value must be 0 or 1");
    const std::uint32_t b = std::uint32_t{1} << (coord - 1);
    if (mask & b) throw InputError("coordinate " + std::to_string(coord) + " fixed twice");
    mask |= b;
    if (bit) pattern |= b;
  }
  return SubCube(n, CoordSet(mask), pattern);
}

std::vector<std::pair<int, int>> SubCube::assignments() const {
  std::vector<std::pair<int, int>> out;
  for (int c : fixed_.to_list()) out.emplace_back(c, static_cast<int>((pattern_ >> (c - 1)) & 1U));
  return out;
}

SubCube SubCube::fix(int coord, int bit) const {
  if (fixed_.contains(coord)) throw InputError("coordinate already fixed");
  const Vertex b = bit ? (Vertex{1} << (coord - 1)) : 0;
  return SubCube(n_, fixed_.with(coord), pattern_ | b);
}

bool canonical_less(const SubCube& a, const SubCube& b) {
  if (a.codim() != b.codim()) return a.codim() < b.codim();
  const auto ta = a.fixed().to_list();
  const auto tb = b.fixed().to_list();
  if (ta != tb) return std::lexicographical_compare(ta.begin(), ta.end(), tb.begin(), tb.end());
  // Same T: compare pattern bits along ascending T.
  for (int c : ta) {
    const auto ba = (a.pattern() >> (c - 1)) & 1U;
    const auto bb = (b.pattern() >> (c - 1)) & 1U;
    if (ba != bb) return ba < bb;
  }
  return false;
}

CubeSet subcube_members(const SubCube& c) {
  CubeSetBuilder builder(c.dim());
  const CoordSet free = c.fixed().complement(c.dim());
  const std::uint64_t count = c.size();
  for (std::uint64_t k = 0; k < count; ++k) {
    builder.insert(bits::expand(static_cast<std::uint32_t>(k), free.mask()) | c.pattern());
  }
  return std::move(builder).build();
}

CubeSet harper_segment(int n, std::uint64_t m) {
  check_dim(n);
  const std::uint64_t total = std::uint64_t{1} << n;
  if (m > total) throw InputError("segment length " + std::to_string(m) + " exceeds 2^n = " + std::to_string(total));
  std::vector<std::uint64_t> words(CubeSet::word_count(n), 0);
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::uint64_t lo = static_cast<std::uint64_t>(w) << 6;
    if (m >= lo + 64) {
      words[w] = ~std::uint64_t{0};
    } else if (m > lo) {
      words[w] = (std::uint64_t{1} << (m - lo)) - 1;
    }
  }
  if (n < 6) words[0] &= tail_mask(n);
  return CubeSet::from_words(n, std::move(words));
}

CubeSet section(const CubeSet& a, CoordSet i_coords, const PartialAssignment& y) {
  const int n = a.dim();
  if (!i_coords.within(n)) throw InputError("section coordinates outside [1, n]");
  if ((i_coords.mask() & y.coords.mask()) != 0) throw InputError("section coordinates overlap the assignment");
  if ((i_coords.mask() | y.coords.mask()) != CoordSet::full(n).mask()) {
    throw InputError("section coordinates and assignment do not cover [n]");
  }
  if ((y.bits & ~y.coords.mask()) != 0) throw InputError("assignment sets a coordinate outside its domain");
  return section_at(a, i_coords, bits::compress(y.bits, y.coords.mask()));
}

CubeSet section_at(const CubeSet& a, CoordSet i_coords, std::uint32_t y_index) {
  const int n = a.dim();
  if (!i_coords.within(n)) throw InputError("section coordinates outside [1, n]");
  const CoordSet j_coords = i_coords.complement(n);
  if (y_index >> j_coords.size() != 0) throw InputError("section index outside {0,1}^J");
  const Vertex base = bits::expand(y_index, j_coords.mask());
  const int d = i_coords.size();
  CubeSetBuilder builder(d);
  const std::uint64_t count = std::uint64_t{1} << d;
  // Submasks of I in increasing order are exactly expand(z) for z = 0, 1, ...
  const std::uint32_t mask = i_coords.mask();
  std::uint32_t offset = 0;
  for (std::uint64_t z = 0; z < count; ++z) {
    if (a.contains(base | offset)) builder.insert(static_cast<Vertex>(z));
    offset = (offset - mask) & mask;
  }
  return std::move(builder).build();
}

// --- generators -------------------------------------------------------------

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::CubeUnion: return "cube-union";
    case GeneratorKind::NoisyCube: return "noisy-cube";
    case GeneratorKind::DensityRandom: return "density-random";
    case GeneratorKind::HarperSegment: return "harper-segment";
  }
  return "unknown";
}

std::optional<GeneratorKind> parse_generator_kind(std::string_view text) {
  for (auto kind : {GeneratorKind::CubeUnion, GeneratorKind::NoisyCube, GeneratorKind::DensityRandom,
                    GeneratorKind::HarperSegment}) {
    if (text == to_string(kind)) return kind;
  }
  return std::nullopt;
}

namespace {

SubCube random_subcube(int n, int min_codim, int max_codim, Rng& rng) {
  const int t = min_codim + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_codim - min_codim + 1)));
  std::vector<int> coords(static_cast<std::size_t>(n));
  std::iota(coords.begin(), coords.end(), 1);
  std::uint32_t mask = 0;
  Vertex pattern = 0;
  for (int k = 0; k < t; ++k) {
    const auto pick = static_cast<std::size_t>(k) + rng.below(static_cast<std::uint64_t>(n - k));
    std::swap(coords[static_cast<std::size_t>(k)], coords[pick]);
    const std::uint32_t b = std::uint32_t{1} << (coords[static_cast<std::size_t>(k)] - 1);
    mask |= b;
    if (rng.next() >> 63) pattern |= b;
  }
  return SubCube(n, CoordSet(mask), pattern);
}

std::vector<SubCube> place_disjoint(const GeneratorSpec& spec, int count, int max_codim, Rng& rng) {
  std::vector<SubCube> placed;
  for (int c = 0; c < count; ++c) {
    bool ok = false;
    for (int attempt = 0; attempt < spec.retry_budget && !ok; ++attempt) {
      SubCube cand = random_subcube(spec.n, spec.min_codim, max_codim, rng);
      ok = std::all_of(placed.begin(), placed.end(), [&](const SubCube& p) { return p.disjoint_from(cand); });
      if (ok) placed.push_back(cand);
    }
    if (!ok) {
      throw GenerationError("could not place cube " + std::to_string(c + 1) + " of " + std::to_string(count) +
                            " disjointly within " + std::to_string(spec.retry_budget) + " attempts");
    }
  }
  return placed;
}

}  // namespace

GeneratedSet generate(const GeneratorSpec& spec) {
  check_dim(spec.n);
  const int n = spec.n;
  Rng rng(spec.seed);

  if (spec.kind == GeneratorKind::HarperSegment) return {harper_segment(n, spec.count), {}};

  if (spec.kind == GeneratorKind::DensityRandom) {
    if (!(spec.density >= 0.0 && spec.density <= 1.0)) throw InputError("density must lie in [0, 1]");
    CubeSetBuilder builder(n);
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t v = 0; v < total; ++v) {
      if (rng.bernoulli(spec.density)) builder.insert(static_cast<Vertex>(v));
    }
    return {std::move(builder).build(), {}};
  }

  if (!(spec.noise >= 0.0 && spec.noise <= 1.0)) throw InputError("noise rate must lie in [0, 1]");
  const int max_codim = spec.max_codim < 0 ? n : spec.max_codim;
  if (spec.min_codim < 0 || spec.min_codim > max_codim || max_codim > n) {
    throw InputError("codimension range must satisfy 0 <= min <= max <= n");
  }
  const int count = spec.kind == GeneratorKind::NoisyCube ? 1 : spec.cube_count;
  if (count < 0) throw InputError("cube count must be nonnegative");
  if (spec.retry_budget < 1) throw InputError("retry budget must be positive");

  std::vector<SubCube> planted;
  if (!spec.cubes.empty()) {
    planted = spec.cubes;
    for (std::size_t a = 0; a < planted.size(); ++a) {
      if (planted[a].dim() != n) throw InputError("explicit cube has the wrong dimension");
      for (std::size_t b = 0; b < a; ++b) {
        if (!planted[a].disjoint_from(planted[b])) throw InputError("explicit cubes overlap");
      }
    }
  } else {
    planted = place_disjoint(spec, count, max_codim, rng);
  }

  CubeSetBuilder builder(n);
  for (const SubCube& c : planted) {
    subcube_members(c).for_each_member([&](Vertex v) { builder.insert(v); });
  }
  if (spec.noise > 0.0) {
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t v = 0; v < total; ++v) {
      if (rng.bernoulli(spec.noise)) builder.flip(static_cast<Vertex>(v));
    }
  }
  return {std::move(builder).build(), std::move(planted)};
}

}  // namespace isocube
