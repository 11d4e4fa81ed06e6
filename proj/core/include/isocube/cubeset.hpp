#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace isocube {

inline constexpr int kMaxDim = 24;

/// Vertex of {0,1}^n. Coordinate i (1-based) is bit i-1, so x xor e_i is a
/// single bit flip. This convention is shared by every module and file format.
using Vertex = std::uint32_t;

/// Subset of the coordinate set [n], stored as a mask (coordinate i = bit i-1).
class CoordSet {
 public:
  constexpr CoordSet() = default;
  constexpr explicit CoordSet(std::uint32_t mask) : mask_(mask) {}

  static CoordSet of(std::initializer_list<int> coords);
  static CoordSet from_list(std::span<const int> coords);
  static constexpr CoordSet full(int n) {
    return CoordSet(n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1);
  }

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(int coord) const {
    return coord >= 1 && coord <= 32 && ((mask_ >> (coord - 1)) & 1U) != 0;
  }
  /// True when every coordinate lies in [1, n].
  constexpr bool within(int n) const { return (mask_ & ~full(n).mask_) == 0; }

  constexpr CoordSet complement(int n) const { return CoordSet(full(n).mask_ & ~mask_); }
  constexpr CoordSet with(int coord) const { return CoordSet(mask_ | (std::uint32_t{1} << (coord - 1))); }
  constexpr CoordSet without(int coord) const { return CoordSet(mask_ & ~(std::uint32_t{1} << (coord - 1))); }

  /// Ascending 1-based coordinate list.
  std::vector<int> to_list() const;

  friend constexpr bool operator==(CoordSet, CoordSet) = default;

 private:
  std::uint32_t mask_ = 0;
};

/// A subset of the n-cube as an exact membership table (one bit per vertex).
/// Immutable after construction; build incrementally with CubeSetBuilder.
class CubeSet {
 public:
  /// Empty subset of Q_0.
  CubeSet() : CubeSet(0, std::vector<std::uint64_t>(1, 0)) {}

  static CubeSet empty(int n);
  static CubeSet full(int n);

  /// Set containing exactly the distinct listed vertices. Duplicates allowed.
  /// Throws InputError naming the first index outside [0, 2^n).
  static CubeSet from_vertices(int n, std::span<const Vertex> vertices);
  static CubeSet from_vertices(int n, std::initializer_list<Vertex> vertices) {
    return from_vertices(n, std::span<const Vertex>(vertices.begin(), vertices.size()));
  }

  /// Takes ownership of a packed table (bit v of word v/64 is vertex v).
  /// Bits beyond 2^n must be zero.
  static CubeSet from_words(int n, std::vector<std::uint64_t> words);

  template <class Pred>
  static CubeSet from_predicate(int n, Pred&& pred);

  int dim() const { return n_; }
  std::uint64_t size() const { return size_; }
  std::uint64_t universe_size() const { return std::uint64_t{1} << n_; }
  double density() const { return static_cast<double>(size_) / static_cast<double>(universe_size()); }
  bool empty() const { return size_ == 0; }
  bool is_full() const { return size_ == universe_size(); }
  bool is_constant() const { return empty() || is_full(); }

  bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }

  std::span<const std::uint64_t> words() const { return words_; }
  static std::size_t word_count(int n) { return n <= 6 ? 1 : (std::size_t{1} << (n - 6)); }

  std::vector<Vertex> members() const;

  /// Calls f(v) for every member in ascending order.
  template <class F>
  void for_each_member(F&& f) const;

  CubeSet complement() const;
  std::uint64_t symmetric_difference_size(const CubeSet& other) const;
  std::uint64_t intersection_size(const CubeSet& other) const;

  friend bool operator==(const CubeSet&, const CubeSet&) = default;

 private:
  CubeSet(int n, std::vector<std::uint64_t> words);

  int n_ = 0;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

class CubeSetBuilder {
 public:
  explicit CubeSetBuilder(int n);

  int dim() const { return n_; }
  void insert(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  void flip(Vertex v) { words_[v >> 6] ^= std::uint64_t{1} << (v & 63); }
  bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }

  CubeSet build() &&;

 private:
  int n_;
  std::vector<std::uint64_t> words_;
};

/// Subcube {x : x_T = z0}: coordinates in `fixed` take the values of
/// `pattern` (stored at their vertex bit positions), the rest range freely.
class SubCube {
 public:
  SubCube() = default;
  SubCube(int n, CoordSet fixed, Vertex pattern);

  static SubCube whole(int n) { return SubCube(n, CoordSet{}, 0); }
  /// From (coordinate, bit) pairs; rejects repeated or out-of-range coordinates.
  static SubCube from_assignments(int n, std::span<const std::pair<int, int>> fixed);
  static SubCube from_assignments(int n, std::initializer_list<std::pair<int, int>> fixed) {
    return from_assignments(n, std::span<const std::pair<int, int>>(fixed.begin(), fixed.size()));
  }

  int dim() const { return n_; }
  CoordSet fixed() const { return fixed_; }
  Vertex pattern() const { return pattern_; }
  int codim() const { return fixed_.size(); }
  std::uint64_t size() const { return std::uint64_t{1} << (n_ - codim()); }

  bool contains(Vertex v) const { return (v & fixed_.mask()) == pattern_; }
  bool disjoint_from(const SubCube& other) const {
    return ((pattern_ ^ other.pattern_) & fixed_.mask() & other.fixed_.mask()) != 0;
  }

  /// Ascending (coordinate, bit) pairs.
  std::vector<std::pair<int, int>> assignments() const;

  /// Adds one more fixed coordinate. The coordinate must currently be free.
  SubCube fix(int coord, int bit) const;

  friend bool operator==(const SubCube&, const SubCube&) = default;

 private:
  int n_ = 0;
  CoordSet fixed_;
  Vertex pattern_ = 0;
};

/// Total order used for deterministic tie-breaking: smaller codimension first,
/// then lexicographically smaller ascending coordinate list T, then
/// lexicographically smaller pattern read along T.
bool canonical_less(const SubCube& a, const SubCube& b);

/// Assignment y of values to a coordinate subset (bits stored in place).
struct PartialAssignment {
  CoordSet coords;
  Vertex bits = 0;
};

CubeSet subcube_members(const SubCube& c);

/// Initial segment {0, ..., m-1} of the binary ordering.
CubeSet harper_segment(int n, std::uint64_t m);

/// The y-section {z in {0,1}^I : y∘z in A}, re-indexed over I ascending.
/// `y` must assign exactly the coordinates of [n] \ I.
CubeSet section(const CubeSet& a, CoordSet i_coords, const PartialAssignment& y);

/// Same, with y given as the packed index over J = [n] \ I (bit k is the
/// value of the k-th smallest coordinate of J).
CubeSet section_at(const CubeSet& a, CoordSet i_coords, std::uint32_t y_index);

enum class GeneratorKind { CubeUnion, NoisyCube, DensityRandom, HarperSegment };

std::string_view to_string(GeneratorKind kind);
std::optional<GeneratorKind> parse_generator_kind(std::string_view text);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::DensityRandom;
  int n = 0;
  int cube_count = 1;        // L, cube-union only (noisy-cube plants exactly one)
  double noise = 0.0;        // eta, cube-union / noisy-cube
  double density = 0.5;      // density-random
  std::uint64_t count = 0;   // m, harper-segment
  int min_codim = 1;         // codimension range for random cubes
  int max_codim = -1;        // -1 means n
  int retry_budget = 1000;   // attempts per cube in disjoint placement
  std::vector<SubCube> cubes;  // explicit cubes replace random placement when nonempty
  std::uint64_t seed = 0;
};

struct GeneratedSet {
  CubeSet set;
  std::vector<SubCube> planted;
};

/// Deterministic in (spec, seed). Throws GenerationError when disjoint
/// placement exhausts the retry budget, InputError on invalid parameters.
GeneratedSet generate(const GeneratorSpec& spec);

// ---------------------------------------------------------------------------

template <class Pred>
CubeSet CubeSet::from_predicate(int n, Pred&& pred) {
  CubeSetBuilder builder(n);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t v = 0; v < total; ++v) {
    if (pred(static_cast<Vertex>(v))) builder.insert(static_cast<Vertex>(v));
  }
  return std::move(builder).build();
}

template <class F>
void CubeSet::for_each_member(F&& f) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word != 0) {
      const int bit = std::countr_zero(word);
      f(static_cast<Vertex>((w << 6) | static_cast<std::size_t>(bit)));
      word &= word - 1;
    }
  }
}

}  // namespace isocube
