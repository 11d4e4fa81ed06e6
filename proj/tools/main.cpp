// isocube: analyze sets, decompose them into subcubes, run verification
// suites and generate test sets.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isocube/decomposition.hpp"
#include "isocube/error.hpp"
#include "isocube/harness.hpp"
#include "isocube/hypercontractivity.hpp"
#include "isocube/io.hpp"
#include "isocube/isoperimetry.hpp"
#include "isocube/sections.hpp"

using namespace isocube;

namespace {

enum Exit { kOk = 0, kFailures = 1, kUsage = 2, kCapability = 3 };

CoordSet parse_coords(const std::string& text, int n) {
  std::vector<int> coords;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    std::size_t used = 0;
    int c = 0;
    try {
      c = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw InputError("--i-coords: '" + item + "' is not an integer");
    if (c < 1 || c > n) throw InputError("--i-coords: coordinate " + item + " outside [1, " + std::to_string(n) + "]");
    coords.push_back(c);
    pos = comma + 1;
  }
  return CoordSet::from_list(coords);
}

Json analyze_set(const CubeSet& a, const std::optional<std::string>& i_coords) {
  Json out{{"n", a.dim()}, {"size", a.size()}, {"alpha", a.density()}};
  out["iso"] = a.empty() ? Json(nullptr) : to_json(iso_excess(a));
  out["influence"] = to_json(influence_profile(a));
  if (!a.is_constant()) {
    const TalagrandReport t = talagrand_ratio(a);
    out["talagrand"] = Json{{"sum", t.sum}, {"variance", t.variance}, {"ratio", t.ratio}};
  }
  if (!a.empty()) {
    const EllisReport e = ellis_check(a);
    out["best_subcube"] = to_json(e.cube);
    out["best_subcube"]["relative_distance"] = e.relative_distance;
    out["best_subcube"]["ellis_bound"] = std::isfinite(e.bound) ? Json(e.bound) : Json(nullptr);
    out["best_subcube"]["ellis_applicable"] = e.applicable;
  }
  if (i_coords) {
    const CoordSet i = parse_coords(*i_coords, a.dim());
    out["sections"] = to_json(section_table(a, i));
    if (!i.empty() && i.size() < a.dim()) out["mutual_information"] = mutual_information(a, i);
  }
  return out;
}

Json analyze_function(const PseudoBooleanFn& f) {
  Json checks = Json::array();
  for (int ell = 0; within_polyanskiy_range(f.dim(), ell); ++ell) {
    const PolyanskiyReport r = polyanskiy_check(f, ell);
    checks.push_back(Json{{"ell", ell}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"q", r.q}, {"pass", r.pass}});
  }
  return Json{{"n", f.dim()}, {"l2", lp_norm(f, 2.0)}, {"linf", lp_norm(f, INFINITY)}, {"polyanskiy", checks}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge isoperimetry, sections and subcube decomposition on the hypercube"};
  app.require_subcommand(1);

  std::string input;
  std::string out = "-";
  std::string format = "json";
  std::optional<std::string> i_coords;
  double eps = 0.1;
  DecomposeConfig config;
  SuiteParams params;
  std::string suite;
  std::string mode = "exhaustive";
  std::uint64_t seed = 0;

  auto* analyze = app.add_subcommand("analyze", "Isoperimetric report, influences and optional section table");
  analyze->add_option("--input", input, "Set or function file (JSON)")->required();
  analyze->add_option("--i-coords", i_coords, "Comma-separated coordinates I for the section table");
  analyze->add_option("--format", format, "Output format")->check(CLI::IsMember({"json"}));
  analyze->add_option("--out", out, "Output path, - for stdout");

  auto* decomp = app.add_subcommand("decompose", "Approximate a set by disjoint subcubes and verify the result");
  decomp->add_option("--input", input, "Set file (JSON)")->required();
  decomp->add_option("--eps", eps, "Relative error budget in (0, 1]")->required();
  decomp->add_option("--kappa0", config.kappa0, "Excess threshold for the single-subcube base case");
  decomp->add_option("--exh-dim", config.exh_dim, "Largest dimension searched exhaustively for a best subcube");
  decomp->add_option("--drop-frac", config.drop_frac, "Drop the light half when it fits in this fraction of the budget");
  decomp->add_option("--format", format, "Output format")->check(CLI::IsMember({"json"}));
  decomp->add_option("--out", out, "Output path, - for stdout");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--n", params.n, "Dimension (largest dimension in random mode)");
  verify->add_option("--min-n", params.min_n, "Smallest dimension drawn in random mode");
  verify->add_option("--mode", mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));
  verify->add_option("--samples", params.samples, "Random-mode trial count");
  verify->add_option("--seed", seed, "64-bit seed");
  verify->add_option("--eps", params.eps, "decomp: relative error budget");
  verify->add_option("--threshold", params.threshold, "talagrand: ratio must exceed this");
  verify->add_option("--kappa0", params.decompose.kappa0, "decomp: base-case excess threshold");
  verify->add_option("--exh-dim", params.decompose.exh_dim, "decomp: exhaustive subcube search dimension");
  verify->add_option("--drop-frac", params.decompose.drop_frac, "decomp: small-side drop fraction");
  verify->add_flag("--timing", params.timing, "Record wall time in the JSON report");
  verify->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", out, "Output path, - for stdout");

  GeneratorSpec spec;
  std::string kind = "density-random";
  auto* gen = app.add_subcommand("gen", "Generate a set file");
  gen->add_option("--kind", kind, "cube-union, noisy-cube, density-random or harper-segment")
      ->check(CLI::IsMember({"cube-union", "noisy-cube", "density-random", "harper-segment"}));
  gen->add_option("--n", spec.n, "Dimension")->required();
  gen->add_option("--cubes", spec.cube_count, "cube-union: number of planted cubes");
  gen->add_option("--eta", spec.noise, "cube-union/noisy-cube: flip probability");
  gen->add_option("--density", spec.density, "density-random: membership probability");
  gen->add_option("--count", spec.count, "harper-segment: initial segment length");
  gen->add_option("--min-codim", spec.min_codim, "Smallest planted codimension");
  gen->add_option("--max-codim", spec.max_codim, "Largest planted codimension (-1 for n)");
  gen->add_option("--seed", spec.seed, "64-bit seed");
  gen->add_option("--out", out, "Output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (analyze->parsed()) {
      const Json j = read_json_file(input);
      const Json report = j.contains("values") ? analyze_function(function_from_json(j))
                                               : analyze_set(cubeset_from_json(j), i_coords);
      write_text(out, report.dump(2) + "\n");
      return kOk;
    }
    if (decomp->parsed()) {
      const CubeSet a = read_set_file(input);
      const DecompositionResult r = decompose(a, eps, config);
      const VerifyOutcome v = verify_decomposition(a, r, eps);
      Json j = to_json(r);
      j["verify"] = Json{{"pass", v.pass}, {"reason", std::string(to_string(v.reason))}, {"sym_diff", v.sym_diff}};
      write_text(out, j.dump(2) + "\n");
      return v.pass ? kOk : kFailures;
    }
    if (verify->parsed()) {
      params.mode = *parse_suite_mode(mode);
      const ReportFormat fmt = *parse_report_format(format);
      params.record_rows = fmt == ReportFormat::Csv;
      const SuiteReport r = run_suite(suite, params, seed);
      emit_report(r, fmt, out);
      std::cerr << r.suite << ": " << r.trials << " trials, " << r.failures << " failures\n";
      return r.failures == 0 ? kOk : kFailures;
    }
    if (gen->parsed()) {
      spec.kind = *parse_generator_kind(kind);
      const GeneratedSet g = generate(spec);
      Json j = to_json(g.set);
      Json planted = Json::array();
      for (const SubCube& c : g.planted) planted.push_back(to_json(c));
      j["planted"] = planted;
      write_text(out, j.dump() + "\n");
      return kOk;
    }
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return kCapability;
  } catch (const GenerationError& e) {
    std::cerr << "generation error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
