#include "isocube/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "isocube/error.hpp"
#include "isocube/random.hpp"
#include "isocube/sections.hpp"

namespace isocube {

std::string_view to_string(SuiteMode m) { return m == SuiteMode::Exhaustive ? "exhaustive" : "random"; }

std::optional<SuiteMode> parse_suite_mode(std::string_view text) {
  if (text == "exhaustive") return SuiteMode::Exhaustive;
  if (text == "random") return SuiteMode::Random;
  return std::nullopt;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"iso",     "sections",  "product",   "hyper",
                                                 "sparse",  "talagrand", "influence", "decomp"};
  return names;
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  return std::nullopt;
}

PseudoBooleanFn random_function(int n, std::uint64_t seed, std::uint64_t stream) {
  Rng rng = Rng::for_stream(seed, stream);
  std::vector<double> values(std::size_t{1} << n);
  for (double& x : values) x = rng.uniform(-1.0, 1.0);
  return PseudoBooleanFn(n, std::move(values));
}

namespace {

enum class Sense { AtMost, AtLeast, Above };

using InputFn = std::function<Json()>;

/// One trial: a sequence of checks, the first failure becomes the witness.
class Trial {
 public:
  Trial(SuiteReport& report, std::string id) : report_(report), id_(std::move(id)) {}

  bool check(std::string_view quantity, double value, double bound, Sense sense, double slack, const InputFn& input) {
    const double margin = sense == Sense::AtMost ? bound - value : value - bound;
    const bool pass = sense == Sense::Above ? margin > 0.0 : margin >= -slack;
    return record(quantity, value, bound, margin, pass, input);
  }

  /// A check whose verdict is decided exactly elsewhere.
  bool exact(std::string_view quantity, double value, double bound, bool pass, const InputFn& input) {
    return record(quantity, value, bound, value - bound, pass, input);
  }

  void finish() {
    ++report_.trials;
    if (failed_) ++report_.failures;
    if (report_.params.record_rows && has_row_) report_.rows.push_back(std::move(row_));
  }

 private:
  bool record(std::string_view quantity, double value, double bound, double margin, bool pass, const InputFn& input) {
    if (!has_row_ || (!pass && row_.pass)) {
      row_ = TrialRow{id_, std::string(quantity), value, bound, margin, pass};
      has_row_ = true;
    }
    if (!pass && !failed_) {
      failed_ = true;
      report_.witnesses.push_back(Witness{input(), std::string(quantity), value, bound});
    }
    return pass;
  }

  SuiteReport& report_;
  std::string id_;
  TrialRow row_;
  bool has_row_ = false;
  bool failed_ = false;
};

void track_min(SuiteReport& r, const std::string& key, double v) {
  auto [it, inserted] = r.empirical_constants.try_emplace(key, v);
  if (!inserted) it->second = std::min(it->second, v);
}

void track_max(SuiteReport& r, const std::string& key, double v) {
  auto [it, inserted] = r.empirical_constants.try_emplace(key, v);
  if (!inserted) it->second = std::max(it->second, v);
}

Json set_input(const CubeSet& a) { return Json{{"n", a.dim()}, {"bits_hex", to_bits_hex(a)}}; }

CubeSet input_set(const Json& input) { return cubeset_from_json(input.at("set")); }

std::string hex_id(const CubeSet& a) { return "set=" + to_bits_hex(a); }

Json config_json(const DecomposeConfig& c) {
  return Json{{"kappa0", c.kappa0}, {"exh_dim", c.exh_dim}, {"drop_frac", c.drop_frac}};
}

DecomposeConfig config_from(const Json& j) {
  DecomposeConfig c;
  c.kappa0 = j.at("kappa0").get<double>();
  c.exh_dim = j.at("exh_dim").get<int>();
  c.drop_frac = j.at("drop_frac").get<double>();
  return c;
}

void validate(const SuiteParams& p) {
  if (p.n < 1 || p.n > kMaxDim) throw InputError("n must lie in [1, 24]");
  if (p.min_n > p.n) throw InputError("min_n exceeds n");
  if (p.min_n >= 0 && p.min_n < 1) throw InputError("min_n must be positive");
  if (p.mode == SuiteMode::Exhaustive && p.n > kExhaustiveSuiteMaxDim) {
    throw CapabilityError("exhaustive mode enumerates all 2^(2^n) subsets and is limited to n <= 4; got n = " +
                          std::to_string(p.n));
  }
}

int draw_n(const SuiteParams& p, std::uint64_t seed, std::uint64_t t) {
  const int lo = p.min_n < 0 ? p.n : p.min_n;
  if (lo == p.n) return p.n;
  Rng rng = Rng::for_stream(splitmix64(seed ^ 0x6e5f6472617721ULL), t);
  return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(p.n - lo + 1)));
}

CubeSet random_set(int n, Rng& rng) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::DensityRandom;
  spec.n = n;
  spec.density = rng.uniform();
  spec.seed = rng.next();
  return generate(spec).set;
}

/// Visits the input sets of a set-based suite: every subset of Q_n in
/// exhaustive mode, otherwise `samples` random sets.
void for_each_input(const SuiteParams& p, std::uint64_t seed, const std::function<void(const CubeSet&, const std::string&)>& f) {
  if (p.mode == SuiteMode::Exhaustive) {
    const std::uint64_t count = std::uint64_t{1} << (std::uint64_t{1} << p.n);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      const CubeSet a = CubeSet::from_words(p.n, {mask});
      f(a, hex_id(a));
    }
    return;
  }
  for (std::uint64_t t = 0; t < p.samples; ++t) {
    Rng rng = Rng::for_stream(seed, t);
    f(random_set(draw_n(p, seed, t), rng), "trial=" + std::to_string(t));
  }
}

/// All set partitions of [n] with at least two blocks, via restricted growth strings.
std::vector<std::vector<CoordSet>> partitions(int n) {
  std::vector<std::vector<CoordSet>> out;
  std::vector<int> label(static_cast<std::size_t>(n), 0);
  const std::function<void(int, int)> rec = [&](int pos, int blocks) {
    if (pos == n) {
      if (blocks < 2) return;
      std::vector<CoordSet> parts(static_cast<std::size_t>(blocks));
      for (int c = 0; c < n; ++c) parts[static_cast<std::size_t>(label[static_cast<std::size_t>(c)])] =
          parts[static_cast<std::size_t>(label[static_cast<std::size_t>(c)])].with(c + 1);
      out.push_back(std::move(parts));
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      label[static_cast<std::size_t>(pos)] = b;
      rec(pos + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

std::vector<CoordSet> random_partition(int n, Rng& rng) {
  for (;;) {
    const auto m = 2 + rng.below(static_cast<std::uint64_t>(n - 1));
    std::vector<CoordSet> parts(m);
    for (int c = 1; c <= n; ++c) {
      auto& block = parts[rng.below(m)];
      block = block.with(c);
    }
    std::erase_if(parts, [](CoordSet s) { return s.empty(); });
    if (parts.size() >= 2) return parts;
  }
}

Json partition_json(const std::vector<CoordSet>& parts) {
  Json j = Json::array();
  for (CoordSet s : parts) j.push_back(s.to_list());
  return j;
}

std::vector<CoordSet> partition_from(const Json& j) {
  std::vector<CoordSet> parts;
  for (const auto& block : j) parts.push_back(CoordSet::from_list(block.get<std::vector<int>>()));
  return parts;
}

// ---------------------------------------------------------------------------

void run_iso(SuiteReport& r, std::uint64_t seed) {
  for_each_input(r.params, seed, [&](const CubeSet& a, const std::string& id) {
    Trial t(r, id);
    if (a.empty()) {
      t.check("boundary", static_cast<double>(edge_boundary(a)), 0.0, Sense::AtLeast, 0.0,
              [&] { return Json{{"set", set_input(a)}}; });
    } else {
      const IsoReport rep = iso_excess(a);
      const InputFn input = [&] { return Json{{"set", set_input(a)}}; };
      t.check("excess", rep.excess, 0.0, Sense::AtLeast, kInequalitySlack, input);
      track_min(r, "min_excess", rep.excess);
      if (a.dim() <= kEllisSuiteMaxDim) {
        // Stability: zero excess forces a subcube; small excess forces closeness
        // to one. Above the threshold the bound makes no claim, so only count.
        const EllisReport e = ellis_check(a);
        if (rep.excess <= kSubcubeExcessTolerance) {
          t.check("ellis_distance", e.relative_distance, 0.0, Sense::AtMost, 0.0, input);
        } else if (e.applicable) {
          t.check("ellis_distance", e.relative_distance, e.bound, Sense::AtMost, kInequalitySlack, input);
          track_max(r, "max_ellis_distance_over_bound", e.relative_distance / e.bound);
          r.empirical_constants["ellis_applicable_count"] += 1.0;
        } else {
          r.empirical_constants["ellis_above_threshold_count"] += 1.0;
        }
      }
    }
    t.finish();
  });
  if (r.params.mode == SuiteMode::Exhaustive) {
    // Every subcube attains the bound: digit 0/1 fixes a coordinate, 2 leaves it free.
    const int n = r.params.n;
    std::uint64_t cubes = 1;
    for (int i = 0; i < n; ++i) cubes *= 3;
    for (std::uint64_t code = 0; code < cubes; ++code) {
      std::vector<std::pair<int, int>> fixed;
      std::uint64_t rest = code;
      for (int c = 1; c <= n; ++c, rest /= 3) {
        if (rest % 3 != 2) fixed.emplace_back(c, static_cast<int>(rest % 3));
      }
      track_max(r, "max_subcube_excess", iso_excess(subcube_members(SubCube::from_assignments(n, fixed))).excess);
    }
    r.empirical_constants["subcube_count"] = static_cast<double>(cubes);
  }
}

void run_sections(SuiteReport& r, std::uint64_t seed) {
  const SuiteParams& p = r.params;
  auto body = [&](const CubeSet& a, const std::vector<CoordSet>& parts, const std::string& id) {
    const SectionalControlReport rep = sectional_control(a, parts);
    const InputFn input = [&] { return Json{{"set", set_input(a)}, {"partition", partition_json(parts)}}; };
    Trial t(r, id);
    t.check("lhs_i", rep.lhs_i, rep.k, Sense::AtMost, kInequalitySlack, input);
    t.check("lhs_ii", rep.lhs_ii, rep.k, Sense::AtMost, kInequalitySlack, input);
    t.exact("boundary_identity", rep.identity_holds ? 1.0 : 0.0, 1.0, rep.identity_holds, input);
    t.finish();
    track_max(r, "max_lhs_i_minus_k", rep.lhs_i - rep.k);
    track_max(r, "max_lhs_ii_minus_k", rep.lhs_ii - rep.k);
  };
  if (p.mode == SuiteMode::Exhaustive) {
    if (p.n < 2) return;
    const auto all = partitions(p.n);
    r.empirical_constants["partition_count"] = static_cast<double>(all.size());
    for_each_input(p, seed, [&](const CubeSet& a, const std::string& id) {
      if (a.empty()) return;
      for (std::size_t k = 0; k < all.size(); ++k) body(a, all[k], id + ";P" + std::to_string(k));
    });
    return;
  }
  for (std::uint64_t t = 0; t < p.samples; ++t) {
    const int n = draw_n(p, seed, t);
    if (n < 2) continue;
    Rng rng = Rng::for_stream(seed, t);
    CubeSet a = random_set(n, rng);
    while (a.empty()) a = random_set(n, rng);
    body(a, random_partition(n, rng), "trial=" + std::to_string(t));
  }
}

void run_product(SuiteReport& r, std::uint64_t seed) {
  static constexpr double kEps[] = {0.25, 0.5};
  auto body = [&](const CubeSet& a, CoordSet i_coords, double eps, const std::string& id) {
    const ProductStructureReport rep = product_structure(a, i_coords, eps);
    const double need = (1.0 - eps) * static_cast<double>(a.size());
    Trial t(r, id);
    t.check("good_count", static_cast<double>(rep.good_count), need, Sense::AtLeast, kInequalitySlack, [&] {
      return Json{{"set", set_input(a)}, {"i_coords", i_coords.to_list()}, {"eps", eps}};
    });
    t.finish();
    track_min(r, "min_good_fraction", static_cast<double>(rep.good_count) / static_cast<double>(a.size()));
    track_max(r, "max_mutual_information", rep.mutual_information);
  };
  const SuiteParams& p = r.params;
  if (p.mode == SuiteMode::Exhaustive) {
    if (p.n < 2) return;
    const std::uint32_t top = CoordSet::full(p.n).mask();
    for_each_input(p, seed, [&](const CubeSet& a, const std::string& id) {
      if (a.empty()) return;
      for (std::uint32_t m = 1; m < top; ++m) {
        for (double eps : kEps) {
          body(a, CoordSet(m), eps, id + ";I" + std::to_string(m) + ";eps=" + (eps == 0.25 ? "1/4" : "1/2"));
        }
      }
    });
    return;
  }
  for (std::uint64_t t = 0; t < p.samples; ++t) {
    const int n = draw_n(p, seed, t);
    if (n < 2) continue;
    Rng rng = Rng::for_stream(seed, t);
    CubeSet a = random_set(n, rng);
    while (a.empty()) a = random_set(n, rng);
    const auto mask = static_cast<std::uint32_t>(1 + rng.below(CoordSet::full(n).mask() - 1));
    body(a, CoordSet(mask), kEps[rng.below(2)], "trial=" + std::to_string(t));
  }
}

void run_hyper(SuiteReport& r, std::uint64_t seed) {
  auto body = [&](const PseudoBooleanFn& f, const std::function<Json()>& descriptor, const std::string& id) {
    for (int ell = 0; within_polyanskiy_range(f.dim(), ell); ++ell) {
      const PolyanskiyReport rep = polyanskiy_check(f, ell);
      Trial t(r, id + ";ell=" + std::to_string(ell));
      t.check("lhs", rep.lhs, rep.rhs, Sense::AtMost, kInequalitySlack, [&] {
        Json j = descriptor();
        j["ell"] = ell;
        return j;
      });
      t.finish();
      if (rep.rhs > 0.0) track_max(r, "max_lhs_over_rhs", rep.lhs / rep.rhs);
    }
  };
  const SuiteParams& p = r.params;
  if (p.mode == SuiteMode::Exhaustive) {
    for_each_input(p, seed, [&](const CubeSet& a, const std::string& id) {
      body(PseudoBooleanFn::indicator(a), [&] { return Json{{"set", set_input(a)}}; }, id);
    });
    return;
  }
  for (std::uint64_t t = 0; t < p.samples; ++t) {
    const int n = draw_n(p, seed, t);
    body(random_function(n, seed, t), [&] { return Json{{"function", {{"n", n}, {"seed", seed}, {"stream", t}}}}; },
         "trial=" + std::to_string(t));
  }
}

void run_sparse(SuiteReport& r, std::uint64_t seed) {
  static constexpr double kDensities[] = {0x1.0p-10, 0.1, 0.5, 0.9};
  auto body = [&](const CubeSet& a, const std::string& id) {
    for (int d = 1; within_polyanskiy_range(a.dim(), d); ++d) {
      const SparseSectionReport rep = sparse_section_expectation(a, d, ExpectationMode::Exact);
      const double op = sparse_section_operator_form(a, d);
      const InputFn input = [&] { return Json{{"set", set_input(a)}, {"d", d}}; };
      Trial t(r, id + ";d=" + std::to_string(d));
      t.check("expectation", rep.expectation, rep.bound, Sense::AtMost, kInequalitySlack, input);
      t.check("operator_gap", std::abs(op - rep.expectation), kInequalitySlack, Sense::AtMost, 0.0, input);
      t.finish();
      track_max(r, "max_expectation_over_bound", rep.expectation / rep.bound);
      track_max(r, "max_operator_gap", std::abs(op - rep.expectation));
    }
  };
  const SuiteParams& p = r.params;
  if (p.mode == SuiteMode::Exhaustive) {
    for_each_input(p, seed, [&](const CubeSet& a, const std::string& id) {
      if (!a.empty()) body(a, id);
    });
    return;
  }
  for (std::uint64_t t = 0; t < p.samples; ++t) {
    Rng rng = Rng::for_stream(seed, t);
    GeneratorSpec spec;
    spec.kind = GeneratorKind::DensityRandom;
    spec.n = draw_n(p, seed, t);
    spec.density = kDensities[t % 4];
    CubeSet a;
    do {
      spec.seed = rng.next();
      a = generate(spec).set;
    } while (a.empty());
    body(a, "trial=" + std::to_string(t));
  }
}

void run_talagrand(SuiteReport& r, std::uint64_t seed) {
  for_each_input(r.params, seed, [&](const CubeSet& a, const std::string& id) {
    if (a.is_constant()) return;
    const TalagrandReport rep = talagrand_ratio(a);
    Trial t(r, id);
    t.check("ratio", rep.ratio, r.params.threshold, Sense::Above, 0.0, [&] { return Json{{"set", set_input(a)}}; });
    t.finish();
    track_min(r, "min_ratio", rep.ratio);
  });
}

void run_influence(SuiteReport& r, std::uint64_t seed) {
  for_each_input(r.params, seed, [&](const CubeSet& a, const std::string& id) {
    const int n = a.dim();
    const InputFn input = [&] { return Json{{"set", set_input(a)}}; };
    Trial t(r, id);

    // I(1_A) 2^(n-1) = |∂A|, compared as exact dyadic rationals; the
    // disagreement count is also recomputed vertex by vertex.
    const InfluenceProfile prof = influence_profile(a);
    const std::uint64_t boundary = edge_boundary(a);
    std::uint64_t flips = 0;
    for (std::uint64_t v = 0; v < a.universe_size(); ++v) {
      for (int i = 0; i < n; ++i) {
        if (a.contains(static_cast<Vertex>(v)) != a.contains(static_cast<Vertex>(v ^ (std::uint64_t{1} << i)))) ++flips;
      }
    }
    const bool identity = prof.total() == Dyadic(2 * boundary, n) && flips == 2 * boundary;
    t.exact("influence_identity", std::ldexp(prof.total().to_double(), n - 1), static_cast<double>(boundary), identity,
            input);

    if (!a.is_constant() && a.size() + 2 <= a.universe_size()) {
      const MaxInfluence m = max_influence_coordinate(a);
      t.check("max_influence_ratio", m.ratio, 0.0, Sense::Above, 0.0, input);
      track_min(r, "min_max_influence_ratio", m.ratio);
      const double k = iso_excess(a).excess;
      track_max(r, "max_implied_influence_constant", -std::log2(m.ratio) / ((k + 1.0) * (k + 1.0)));
    }

    if (!a.empty()) {
      for (int j = 1; j <= n; ++j) {
        const SplitBookkeeping b = split_bookkeeping(a, j);
        const InputFn with_coord = [&] { return Json{{"set", set_input(a)}, {"coord", j}}; };
        const double gap = std::abs(b.weighted_halves() - b.k_tilde);
        t.check("bookkeeping_identity", gap, kInequalitySlack, Sense::AtMost, 0.0, with_coord);
        t.check("entropy_deficit", b.entropy_deficit(), 0.0, Sense::AtLeast, kInequalitySlack, with_coord);
        t.check("influence_deficit", b.influence_deficit(), 0.0, Sense::AtLeast, kInequalitySlack, with_coord);
        track_max(r, "max_bookkeeping_gap", gap);
      }
    }
    t.finish();
  });
}

void run_decomp(SuiteReport& r, std::uint64_t seed) {
  const SuiteParams& p = r.params;
  const Json config = config_json(p.decompose);
  auto contract = [&](Trial& t, const CubeSet& a) {
    const DecompositionResult res = decompose(a, p.eps, p.decompose);
    const VerifyOutcome out = verify_decomposition(a, res, p.eps);
    t.exact("verify", static_cast<double>(out.sym_diff), p.eps * static_cast<double>(a.size()), out.pass,
            [&] { return Json{{"set", set_input(a)}, {"eps", p.eps}, {"config", config}}; });
    track_max(r, "max_eps_achieved", res.eps_achieved);
    track_max(r, "max_cube_count", static_cast<double>(res.cubes.size()));
  };
  if (p.mode == SuiteMode::Exhaustive) {
    for_each_input(p, seed, [&](const CubeSet& a, const std::string& id) {
      Trial t(r, id);
      contract(t, a);
      t.finish();
    });
    return;
  }
  for (std::uint64_t k = 0; k < p.samples; ++k) {
    Rng rng = Rng::for_stream(seed, k);
    GeneratorSpec spec;
    spec.kind = GeneratorKind::CubeUnion;
    spec.n = draw_n(p, seed, k);
    spec.cube_count = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, p.max_cubes))));
    spec.noise = k % 2 == 0 ? 0.0 : 0.02;
    spec.min_codim = std::min(p.min_codim, spec.n);
    spec.max_codim = std::min(p.max_codim, spec.n);
    spec.seed = rng.next();
    const GeneratedSet g = generate(spec);
    const CubeSet& a = g.set;

    Trial t(r, "trial=" + std::to_string(k) + ";L=" + std::to_string(spec.cube_count) +
                   (spec.noise > 0.0 ? ";eta=0.02" : ";eta=0"));
    contract(t, a);
    if (spec.noise == 0.0 && !a.empty()) {
      // Below the planted resolution the union must come back exactly.
      std::uint64_t smallest = a.universe_size();
      for (const SubCube& c : g.planted) smallest = std::min(smallest, c.size());
      const double eps = std::min(p.eps, static_cast<double>(smallest) / (2.0 * static_cast<double>(a.size())));
      const DecompositionResult res = decompose(a, eps, p.decompose);
      const VerifyOutcome out = verify_decomposition(a, res, eps);
      t.exact("exact_sym_diff", static_cast<double>(out.sym_diff), 0.0, out.pass && out.sym_diff == 0,
              [&] { return Json{{"set", set_input(a)}, {"eps", eps}, {"config", config}}; });
      track_max(r, "max_exact_cubes_over_planted",
                static_cast<double>(res.cubes.size()) / static_cast<double>(g.planted.size()));
    }
    t.finish();
  }
}

}  // namespace

SuiteReport run_suite(std::string_view name, const SuiteParams& params, std::uint64_t seed) {
  static const std::map<std::string, void (*)(SuiteReport&, std::uint64_t), std::less<>> runners = {
      {"iso", run_iso},           {"sections", run_sections}, {"product", run_product},
      {"hyper", run_hyper},       {"sparse", run_sparse},     {"talagrand", run_talagrand},
      {"influence", run_influence}, {"decomp", run_decomp}};
  const auto it = runners.find(name);
  if (it == runners.end()) throw InputError("unknown suite '" + std::string(name) + "'");
  validate(params);

  SuiteReport r;
  r.suite = std::string(name);
  r.params = params;
  r.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  it->second(r, seed);
  if (params.timing) {
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

double replay_witness(std::string_view suite, const Witness& w) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw InputError("unknown suite '" + std::string(suite) + "'");
  }
  const Json& in = w.input;
  const std::string& q = w.quantity;
  if (q == "excess") return iso_excess(input_set(in)).excess;
  if (q == "ellis_distance") return ellis_check(input_set(in)).relative_distance;
  if (q == "boundary") return static_cast<double>(edge_boundary(input_set(in)));
  if (q == "lhs_i" || q == "lhs_ii" || q == "boundary_identity") {
    const auto parts = partition_from(in.at("partition"));
    const SectionalControlReport rep = sectional_control(input_set(in), parts);
    if (q == "lhs_i") return rep.lhs_i;
    if (q == "lhs_ii") return rep.lhs_ii;
    return rep.identity_holds ? 1.0 : 0.0;
  }
  if (q == "good_count") {
    const CoordSet i_coords = CoordSet::from_list(in.at("i_coords").get<std::vector<int>>());
    return static_cast<double>(product_structure(input_set(in), i_coords, in.at("eps").get<double>()).good_count);
  }
  if (q == "lhs") {
    const int ell = in.at("ell").get<int>();
    if (in.contains("function")) {
      const Json& f = in["function"];
      return polyanskiy_check(random_function(f.at("n").get<int>(), f.at("seed").get<std::uint64_t>(),
                                              f.at("stream").get<std::uint64_t>()),
                              ell)
          .lhs;
    }
    return polyanskiy_check(PseudoBooleanFn::indicator(input_set(in)), ell).lhs;
  }
  if (q == "expectation" || q == "operator_gap") {
    const CubeSet a = input_set(in);
    const int d = in.at("d").get<int>();
    const double e = sparse_section_expectation(a, d, ExpectationMode::Exact).expectation;
    return q == "expectation" ? e : std::abs(sparse_section_operator_form(a, d) - e);
  }
  if (q == "ratio") return talagrand_ratio(input_set(in)).ratio;
  if (q == "influence_identity") {
    const CubeSet a = input_set(in);
    return std::ldexp(influence_profile(a).total().to_double(), a.dim() - 1);
  }
  if (q == "max_influence_ratio") return max_influence_coordinate(input_set(in)).ratio;
  if (q == "bookkeeping_identity" || q == "entropy_deficit" || q == "influence_deficit") {
    const SplitBookkeeping b = split_bookkeeping(input_set(in), in.at("coord").get<int>());
    if (q == "bookkeeping_identity") return std::abs(b.weighted_halves() - b.k_tilde);
    return q == "entropy_deficit" ? b.entropy_deficit() : b.influence_deficit();
  }
  if (q == "verify" || q == "exact_sym_diff") {
    const CubeSet a = input_set(in);
    const double eps = in.at("eps").get<double>();
    const DecompositionResult res = decompose(a, eps, config_from(in.at("config")));
    return static_cast<double>(verify_decomposition(a, res, eps).sym_diff);
  }
  throw InputError("witness quantity '" + q + "' has no replay");
}

Json report_json(const SuiteReport& r) {
  const SuiteParams& p = r.params;
  Json params{{"n", p.n},
              {"min_n", p.min_n < 0 ? p.n : p.min_n},
              {"mode", std::string(to_string(p.mode))},
              {"samples", p.samples}};
  if (r.suite == "decomp") {
    params["eps"] = p.eps;
    params["config"] = config_json(p.decompose);
    params["min_codim"] = p.min_codim;
    params["max_codim"] = p.max_codim;
    params["max_cubes"] = p.max_cubes;
  }
  if (r.suite == "talagrand") params["threshold"] = p.threshold;

  Json constants = Json::object();
  for (const auto& [key, value] : r.empirical_constants) {
    constants[key] = std::isfinite(value) ? Json(value) : Json(nullptr);
  }
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back(Json{{"input", w.input}, {"quantity", w.quantity}, {"observed", w.observed}, {"bound", w.bound}});
  }
  Json j{{"suite", r.suite},
         {"seed", r.seed},
         {"params", params},
         {"trials", r.trials},
         {"failures", r.failures},
         {"empirical_constants", constants},
         {"witnesses", witnesses}};
  if (r.wall_seconds) j["wall_seconds"] = *r.wall_seconds;
  return j;
}

std::string report_csv(const SuiteReport& r) {
  std::string out = "input_id,quantity,value,bound,margin,pass\n";
  char buf[96];
  for (const auto& row : r.rows) {
    out += row.input_id;
    out += ',';
    out += row.quantity;
    for (double x : {row.value, row.bound, row.margin}) {
      std::snprintf(buf, sizeof buf, ",%.17g", x);
      out += buf;
    }
    out += row.pass ? ",1\n" : ",0\n";
  }
  return out;
}

void emit_report(const SuiteReport& r, ReportFormat format, const std::filesystem::path& path) {
  write_text(path, format == ReportFormat::Json ? report_json(r).dump(2) + "\n" : report_csv(r));
}

}  // namespace isocube
