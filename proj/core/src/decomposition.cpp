#include "isocube/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isocube/error.hpp"

namespace isocube {

std::string_view to_string(NodeCase c) {
  switch (c) {
    case NodeCase::B1: return "B1";
    case NodeCase::B2: return "B2";
    case NodeCase::B3: return "B3";
    case NodeCase::S1: return "S1";
    case NodeCase::S2: return "S2";
  }
  return "?";
}

std::string_view to_string(VerifyReason r) {
  switch (r) {
    case VerifyReason::Ok: return "ok";
    case VerifyReason::DimensionMismatch: return "dimension";
    case VerifyReason::Overlap: return "overlap";
    case VerifyReason::SymDiffMismatch: return "sym_diff_mismatch";
    case VerifyReason::Budget: return "budget";
  }
  return "?";
}

MaxInfluence max_influence_coordinate(const CubeSet& a) {
  if (a.is_constant()) throw DomainError("a constant set has no influential coordinate");
  const InfluenceProfile p = influence_profile(a);
  MaxInfluence m;
  m.coord = p.max_coordinate();
  m.influence = p.influence(m.coord);
  m.ratio = m.influence.to_double() * static_cast<double>(a.universe_size()) / static_cast<double>(a.size());
  return m;
}

namespace {

double binary_entropy(double g) {
  double h = 0.0;
  if (g > 0.0) h -= g * std::log2(g);
  if (g < 1.0) h -= (1.0 - g) * std::log2(1.0 - g);
  return h;
}

struct Halves {
  SplitBookkeeping book;
  CubeSet minus;
  CubeSet plus;
};

Halves split_halves(const CubeSet& a, int j) {
  if (a.empty()) throw DomainError("cannot split the empty set");
  if (j < 1 || j > a.dim()) throw InputError("split coordinate " + std::to_string(j) + " outside [1, n]");
  const CoordSet rest = CoordSet::full(a.dim()).without(j);
  CubeSet zero = section_at(a, rest, 0);
  CubeSet one = section_at(a, rest, 1);

  Halves h;
  SplitBookkeeping& b = h.book;
  b.split_coord = j;
  b.minus_value = zero.size() <= one.size() ? 0 : 1;
  h.minus = b.minus_value == 0 ? std::move(zero) : std::move(one);
  h.plus = b.minus_value == 0 ? std::move(one) : std::move(zero);

  const double total = static_cast<double>(a.size());
  b.minus_size = h.minus.size();
  b.plus_size = h.plus.size();
  b.gamma = static_cast<double>(b.minus_size) / total;
  b.degenerate = b.minus_size == 0;
  b.k = iso_excess(a).excess;
  b.k_minus = h.minus.empty() ? 0.0 : iso_excess(h.minus).excess;
  b.k_plus = iso_excess(h.plus).excess;
  b.b_j = static_cast<double>(edge_boundary(a, CoordSet().with(j))) / total;
  b.h_gamma = binary_entropy(b.gamma);
  b.k_tilde = b.k - (b.h_gamma - 2.0 * b.gamma) - (b.b_j - (1.0 - 2.0 * b.gamma));
  b.delta = b.k_tilde > 1e-12 ? std::clamp(b.gamma * b.k_minus / b.k_tilde, 0.0, 1.0) : b.gamma;
  return h;
}

/// Maps a subcube of the local cube back into the global region.
SubCube lift(const SubCube& local, const std::vector<int>& to_global, const SubCube& region) {
  SubCube out = region;
  for (auto [coord, bit] : local.assignments()) out = out.fix(to_global[static_cast<std::size_t>(coord - 1)], bit);
  return out;
}

class Decomposer {
 public:
  explicit Decomposer(const DecomposeConfig& config) : config_(config) {}

  TraceNode solve(const CubeSet& local, const std::vector<int>& to_global, const SubCube& region,
                  std::uint64_t budget) {
    TraceNode node;
    node.region = region;
    node.size = local.size();
    node.budget = budget;

    if (local.empty()) {
      node.kind = NodeCase::B1;
      return node;
    }
    if (local.is_full()) {
      node.kind = NodeCase::B2;
      cubes.push_back(region);
      return node;
    }

    if (iso_excess(local).excess <= config_.kappa0) {
      const bool exhaustive = local.dim() <= std::min(config_.exh_dim, kExhaustiveSubcubeMaxDim);
      const BestSubcube best = best_subcube(local, exhaustive ? SearchMode::Exhaustive : SearchMode::Greedy);
      if (best.distance <= budget) {
        node.kind = NodeCase::B3;
        node.error = best.distance;
        cubes.push_back(lift(best.cube, to_global, region));
        return node;
      }
      node.base_rejected = true;
    }

    const int j = max_influence_coordinate(local).coord;
    Halves halves = split_halves(local, j);
    SplitBookkeeping book = halves.book;
    const int global_j = to_global[static_cast<std::size_t>(j - 1)];

    std::vector<int> child_map = to_global;
    child_map.erase(child_map.begin() + (j - 1));
    const SubCube minus_region = region.fix(global_j, book.minus_value);
    const SubCube plus_region = region.fix(global_j, 1 - book.minus_value);

    if (static_cast<double>(book.minus_size) <= config_.drop_frac * static_cast<double>(budget)) {
      node.kind = NodeCase::S1;
      TraceNode child = solve(halves.plus, child_map, plus_region, budget - book.minus_size);
      node.error = book.minus_size + child.error;
      node.children.push_back(std::move(child));
    } else {
      node.kind = NodeCase::S2;
      auto minus_budget = static_cast<std::uint64_t>(std::floor(book.delta * static_cast<double>(budget)));
      minus_budget = std::min(minus_budget, budget);
      TraceNode minus = solve(halves.minus, child_map, minus_region, minus_budget);
      TraceNode plus = solve(halves.plus, child_map, plus_region, budget - minus_budget);
      node.error = minus.error + plus.error;
      if (book.minus_value == 0) {
        node.children.push_back(std::move(minus));
        node.children.push_back(std::move(plus));
      } else {
        node.children.push_back(std::move(plus));
        node.children.push_back(std::move(minus));
      }
    }
    book.split_coord = global_j;
    node.split = book;
    return node;
  }

  std::vector<SubCube> cubes;

 private:
  DecomposeConfig config_;
};

/// Visits the vertices of `c` in increasing order until `f` returns false.
template <class F>
bool all_vertices(const SubCube& c, F&& f) {
  const std::uint32_t free = CoordSet::full(c.dim()).mask() & ~c.fixed().mask();
  std::uint32_t sub = 0;
  do {
    if (!f(c.pattern() | sub)) return false;
    sub = (sub - free) & free;
  } while (sub != 0);
  return true;
}

/// Fuses twin cubes (same fixed set, patterns differing in one coordinate)
/// and regrows a cube across one of its fixed coordinates when the mirror
/// image consists of uncovered members of A. Neither step adds error or cubes.
void cleanup(const CubeSet& a, std::vector<SubCube>& cubes, DecompositionResult& r) {
  const int n = a.dim();
  std::vector<std::uint8_t> covered(a.universe_size(), 0);
  for (const SubCube& c : cubes) all_vertices(c, [&](Vertex v) { return covered[v] = 1; });

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < cubes.size() && !changed; ++i) {
      for (int j : cubes[i].fixed().to_list()) {
        const Vertex bit = Vertex{1} << (j - 1);
        const SubCube twin(n, cubes[i].fixed(), cubes[i].pattern() ^ bit);
        const SubCube grown(n, cubes[i].fixed().without(j), cubes[i].pattern() & ~bit);
        const auto it = std::find(cubes.begin(), cubes.end(), twin);
        if (it != cubes.end()) {
          cubes[i] = grown;
          cubes.erase(it);
          ++r.cleanup_merges;
          changed = true;
          break;
        }
        if (all_vertices(twin, [&](Vertex v) { return !covered[v] && a.contains(v); })) {
          all_vertices(twin, [&](Vertex v) { return covered[v] = 1; });
          cubes[i] = grown;
          r.cleanup_recovered += twin.size();
          changed = true;
          break;
        }
      }
    }
  }
}

}  // namespace

SplitBookkeeping split_bookkeeping(const CubeSet& a, int j) { return split_halves(a, j).book; }

DecompositionResult decompose(const CubeSet& a, double eps, const DecomposeConfig& config) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InputError("eps must lie in (0, 1]");
  if (!(config.kappa0 >= 0.0)) throw InputError("kappa0 must be nonnegative");
  if (!(config.drop_frac >= 0.0 && config.drop_frac <= 1.0)) throw InputError("drop_frac must lie in [0, 1]");
  if (config.exh_dim < 0) throw InputError("exh_dim must be nonnegative");

  DecompositionResult result;
  result.n = a.dim();
  result.budget = static_cast<std::uint64_t>(std::floor(eps * static_cast<double>(a.size())));

  std::vector<int> identity(static_cast<std::size_t>(a.dim()));
  for (int k = 0; k < a.dim(); ++k) identity[static_cast<std::size_t>(k)] = k + 1;

  Decomposer solver(config);
  result.trace = solver.solve(a, identity, SubCube::whole(a.dim()), result.budget);
  result.cubes = std::move(solver.cubes);
  if (config.cleanup) cleanup(a, result.cubes, result);
  result.sym_diff = result.trace.error - result.cleanup_recovered;
  result.eps_achieved = a.empty() ? 0.0 : static_cast<double>(result.sym_diff) / static_cast<double>(a.size());
  result.root_excess = a.empty() ? 0.0 : std::max(0.0, iso_excess(a).excess);
  result.paper_bound_log2_log2 = config.bound_constant * std::pow(result.root_excess / eps, 2.0);
  result.paper_bound_L = std::exp2(std::exp2(result.paper_bound_log2_log2));
  return result;
}

VerifyOutcome verify_decomposition(const CubeSet& a, const DecompositionResult& result, double eps) {
  VerifyOutcome out;
  const int n = a.dim();
  if (result.n != n || std::any_of(result.cubes.begin(), result.cubes.end(),
                                   [n](const SubCube& c) { return c.dim() != n; })) {
    out.reason = VerifyReason::DimensionMismatch;
    return out;
  }
  const std::uint64_t total = a.universe_size();
  std::vector<std::uint8_t> covered(total, 0);
  for (const SubCube& c : result.cubes) {
    for (std::uint64_t v = 0; v < total; ++v) {
      if (!c.contains(static_cast<Vertex>(v))) continue;
      if (covered[v]) {
        out.reason = VerifyReason::Overlap;
        return out;
      }
      covered[v] = 1;
    }
  }
  for (std::uint64_t v = 0; v < total; ++v) {
    if ((covered[v] != 0) != a.contains(static_cast<Vertex>(v))) ++out.sym_diff;
  }
  if (static_cast<double>(out.sym_diff) > eps * static_cast<double>(a.size())) {
    out.reason = VerifyReason::Budget;
    return out;
  }
  if (out.sym_diff != result.sym_diff) {
    out.reason = VerifyReason::SymDiffMismatch;
    return out;
  }
  out.pass = true;
  return out;
}

}  // namespace isocube
