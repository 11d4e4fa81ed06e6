#include "isocube/sections.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "isocube/bits.hpp"
#include "isocube/error.hpp"
#include "isocube/isoperimetry.hpp"

namespace isocube {

namespace {

void require_nonempty(const CubeSet& a) {
  if (a.empty()) throw DomainError("section distributions are undefined for the empty set");
}

void require_within(const CubeSet& a, CoordSet s) {
  if (!s.within(a.dim())) throw InputError("coordinate subset outside [1, n]");
}

/// Sorted (key, count) pairs of the projection x -> x_S over members of A,
/// keys packed over S ascending.
std::vector<std::pair<std::uint32_t, std::uint64_t>> marginal(const CubeSet& a, CoordSet s) {
  std::vector<std::uint32_t> keys;
  keys.reserve(a.size());
  a.for_each_member([&](Vertex v) { keys.push_back(bits::compress(v, s.mask())); });
  std::sort(keys.begin(), keys.end());
  std::vector<std::pair<std::uint32_t, std::uint64_t>> out;
  for (std::uint32_t k : keys) {
    if (!out.empty() && out.back().first == k) {
      ++out.back().second;
    } else {
      out.emplace_back(k, 1);
    }
  }
  return out;
}

double marginal_entropy(const CubeSet& a, CoordSet s) {
  const auto m = marginal(a, s);
  std::vector<std::uint64_t> counts;
  counts.reserve(m.size());
  for (const auto& [key, c] : m) counts.push_back(c);
  return entropy_of_counts(counts);
}

std::uint64_t lookup(const std::vector<std::pair<std::uint32_t, std::uint64_t>>& table, std::uint32_t key) {
  const auto it = std::lower_bound(table.begin(), table.end(), key,
                                   [](const auto& entry, std::uint32_t k) { return entry.first < k; });
  return (it != table.end() && it->first == key) ? it->second : 0;
}

}  // namespace

std::uint64_t SectionTable::i_boundary() const {
  std::uint64_t total = 0;
  for (const auto& e : entries) total += e.boundary;
  return total;
}

SectionTable section_table(const CubeSet& a, CoordSet i_coords) {
  require_nonempty(a);
  require_within(a, i_coords);
  const int n = a.dim();
  const CoordSet j_coords = i_coords.complement(n);
  const std::vector<int> dirs = i_coords.to_list();

  // (y, I-direction boundary edges leaving this member inside its section)
  std::vector<std::pair<std::uint32_t, std::uint64_t>> rows;
  rows.reserve(a.size());
  a.for_each_member([&](Vertex v) {
    std::uint64_t out_edges = 0;
    for (int c : dirs) {
      if (!a.contains(v ^ (Vertex{1} << (c - 1)))) ++out_edges;
    }
    rows.emplace_back(bits::compress(v, j_coords.mask()), out_edges);
  });
  std::sort(rows.begin(), rows.end());

  SectionTable t;
  t.n = n;
  t.i_coords = i_coords;
  t.set_size = a.size();
  for (const auto& [y, edges] : rows) {
    if (t.entries.empty() || t.entries.back().y != y) t.entries.push_back(SectionEntry{y, 0, 0, 0.0, 0.0});
    ++t.entries.back().count;
    t.entries.back().boundary += edges;
  }

  const double total = static_cast<double>(a.size());
  const int d = i_coords.size();
  for (auto& e : t.entries) {
    e.alpha = static_cast<double>(e.count) / total;
    e.excess = isoperimetric_excess(e.boundary, e.count, d);
    if (e.alpha > 0.0) t.entropy -= e.alpha * std::log2(e.alpha);
    t.weighted_excess += e.alpha * e.excess;
  }
  return t;
}

double entropy(std::span<const double> dist) {
  double sum = 0.0;
  for (double p : dist) {
    if (!(p >= 0.0)) throw InputError("probability masses must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InputError("probability masses must sum to 1");
  double h = 0.0;
  for (double p : dist) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double entropy_of_counts(std::span<const std::uint64_t> counts) {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw InputError("entropy of an empty count vector");
  const double t = static_cast<double>(total);
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / t;
    h -= p * std::log2(p);
  }
  return h;
}

double mutual_information(const CubeSet& a, CoordSet i_coords) {
  require_nonempty(a);
  require_within(a, i_coords);
  const CoordSet j_coords = i_coords.complement(a.dim());
  if (i_coords.empty() || j_coords.empty()) {
    throw InputError("mutual information needs a proper nonempty coordinate subset");
  }
  // alpha^I lives on {0,1}^J and alpha^J on {0,1}^I.
  return marginal_entropy(a, j_coords) + marginal_entropy(a, i_coords) - std::log2(static_cast<double>(a.size()));
}

SectionalControlReport sectional_control(const CubeSet& a, std::span<const CoordSet> partition) {
  require_nonempty(a);
  std::uint32_t seen = 0;
  for (CoordSet block : partition) {
    require_within(a, block);
    if (block.empty()) throw InputError("partition blocks must be nonempty");
    if (seen & block.mask()) throw InputError("partition blocks overlap");
    seen |= block.mask();
  }
  if (seen != CoordSet::full(a.dim()).mask()) throw InputError("partition does not cover [n]");

  SectionalControlReport r;
  const IsoReport iso = iso_excess(a);
  r.k = iso.excess;
  const double m = static_cast<double>(partition.size());
  std::uint64_t directional = 0;
  for (CoordSet block : partition) {
    const SectionTable t = section_table(a, block);
    r.lhs_i += t.entropy;
    r.lhs_ii += t.weighted_excess;
    directional += t.i_boundary();
  }
  r.lhs_i -= (m - 1.0) * std::log2(static_cast<double>(a.size()));
  r.identity_holds = directional == iso.boundary;
  r.pass = r.identity_holds && r.lhs_i <= r.k + kInequalitySlack && r.lhs_ii <= r.k + kInequalitySlack;
  return r;
}

ShearerReport shearer_check(const CubeSet& a, std::span<const CoordSet> cover, int d_cover) {
  require_nonempty(a);
  if (d_cover < 0) throw InputError("cover multiplicity must be nonnegative");
  for (CoordSet s : cover) require_within(a, s);
  for (int c = 1; c <= a.dim(); ++c) {
    const auto hits = std::count_if(cover.begin(), cover.end(), [c](CoordSet s) { return s.contains(c); });
    if (hits < d_cover) {
      throw InputError("coordinate " + std::to_string(c) + " appears in " + std::to_string(hits) +
                       " cover members, fewer than " + std::to_string(d_cover));
    }
  }
  ShearerReport r;
  for (CoordSet s : cover) r.lhs += marginal_entropy(a, s);
  r.rhs = static_cast<double>(d_cover) * std::log2(static_cast<double>(a.size()));
  r.pass = r.lhs >= r.rhs - kInequalitySlack;
  return r;
}

ProductStructureReport product_structure(const CubeSet& a, CoordSet i_coords, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("eps must lie in (0, 1)");
  ProductStructureReport r;
  r.mutual_information = mutual_information(a, i_coords);
  const double total = static_cast<double>(a.size());
  r.threshold = total / (std::numbers::e * std::exp2(r.mutual_information / eps));

  const CoordSet j_coords = i_coords.complement(a.dim());
  const auto by_i = marginal(a, i_coords);  // |A^J_z| keyed by z = x_I
  const auto by_j = marginal(a, j_coords);  // |A^I_y| keyed by y = x_J
  a.for_each_member([&](Vertex v) {
    const auto along_j = lookup(by_i, bits::compress(v, i_coords.mask()));
    const auto along_i = lookup(by_j, bits::compress(v, j_coords.mask()));
    if (static_cast<double>(along_j) * static_cast<double>(along_i) >= r.threshold) ++r.good_count;
  });
  r.pass = static_cast<double>(r.good_count) >= (1.0 - eps) * total - kInequalitySlack;
  return r;
}

}  // namespace isocube
