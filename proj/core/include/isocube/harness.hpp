#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isocube/decomposition.hpp"
#include "isocube/hypercontractivity.hpp"
#include "isocube/io.hpp"

namespace isocube {

enum class SuiteMode { Exhaustive, Random };

std::string_view to_string(SuiteMode m);
std::optional<SuiteMode> parse_suite_mode(std::string_view text);

/// Suite names accepted by run_suite, in canonical order.
const std::vector<std::string>& suite_names();

inline constexpr int kExhaustiveSuiteMaxDim = 4;
/// The iso suite runs the exhaustive stability check up to this dimension.
inline constexpr int kEllisSuiteMaxDim = 10;
/// Excess at or below this counts as zero (subcubes attain the bound).
inline constexpr double kSubcubeExcessTolerance = 1e-12;

struct SuiteParams {
  int n = 4;
  int min_n = -1;  // random mode draws n uniformly from [min_n, n]; -1 means n
  SuiteMode mode = SuiteMode::Exhaustive;
  std::uint64_t samples = 100;
  double eps = 0.1;        // decomp budget
  double threshold = 0.0;  // talagrand: ratio must exceed this
  DecomposeConfig decompose;
  int min_codim = 2;       // decomp: planted cube codimension range
  int max_codim = 8;
  int max_cubes = 8;       // decomp: L drawn from [1, max_cubes]
  bool record_rows = true;  // keep one CSV row per trial
  bool timing = false;      // record wall time (breaks byte-identical JSON)
};

/// A failing check. `input` is enough to replay the check through the
/// library (see replay_witness).
struct Witness {
  Json input;
  std::string quantity;
  double observed = 0.0;
  double bound = 0.0;
};

struct TrialRow {
  std::string input_id;
  std::string quantity;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // >= -slack iff the check passed
  bool pass = true;
};

struct SuiteReport {
  std::string suite;
  SuiteParams params;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::vector<Witness> witnesses;
  std::map<std::string, double> empirical_constants;
  std::vector<TrialRow> rows;
  std::optional<double> wall_seconds;
};

/// Runs one verification suite. Exhaustive mode enumerates every subset of
/// Q_n and requires n <= 4 (CapabilityError otherwise); unknown names are an
/// InputError. Failing instances are recorded, never thrown.
SuiteReport run_suite(std::string_view name, const SuiteParams& params, std::uint64_t seed);

/// Recomputes a witness's observed value from its recorded input.
double replay_witness(std::string_view suite, const Witness& w);

/// The i.i.d. uniform [-1, 1] function used by the random hyper suite.
PseudoBooleanFn random_function(int n, std::uint64_t seed, std::uint64_t stream);

enum class ReportFormat { Json, Csv };

std::optional<ReportFormat> parse_report_format(std::string_view text);

Json report_json(const SuiteReport& r);
/// Header plus one row per trial: input_id,quantity,value,bound,margin,pass.
std::string report_csv(const SuiteReport& r);

/// Writes the report to `path` ("-" for standard output); IoError on failure.
void emit_report(const SuiteReport& r, ReportFormat format, const std::filesystem::path& path);

}  // namespace isocube
