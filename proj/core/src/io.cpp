#include "isocube/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "isocube/error.hpp"

namespace isocube {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::size_t byte_count(int n) { return n < 3 ? 1 : (std::size_t{1} << (n - 3)); }

int read_dim(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    throw InputError("expected an object with integer field \"n\"");
  }
  const auto n = j["n"].get<long long>();
  if (n < 0 || n > kMaxDim) throw InputError("dimension " + std::to_string(n) + " outside [0, 24]");
  return static_cast<int>(n);
}

/// NaN and infinities have no JSON number form.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

std::string to_bits_hex(const CubeSet& a) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const auto words = a.words();
  std::string out;
  out.reserve(2 * byte_count(a.dim()));
  for (std::size_t k = 0; k < byte_count(a.dim()); ++k) {
    const auto byte = static_cast<unsigned>((words[k / 8] >> (8 * (k % 8))) & 0xFF);
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 0xF]);
  }
  return out;
}

CubeSet from_bits_hex(int n, std::string_view hex) {
  if (n < 0 || n > kMaxDim) throw InputError("dimension outside [0, 24]");
  const std::size_t bytes = byte_count(n);
  if (hex.size() != 2 * bytes) {
    throw InputError("bits_hex needs " + std::to_string(2 * bytes) + " hex digits for n = " + std::to_string(n) +
                     ", got " + std::to_string(hex.size()));
  }
  std::vector<std::uint64_t> words(CubeSet::word_count(n), 0);
  for (std::size_t k = 0; k < bytes; ++k) {
    const int hi = hex_digit(hex[2 * k]);
    const int lo = hex_digit(hex[2 * k + 1]);
    if (hi < 0 || lo < 0) throw InputError("invalid hex digit near offset " + std::to_string(2 * k));
    words[k / 8] |= static_cast<std::uint64_t>(hi * 16 + lo) << (8 * (k % 8));
  }
  const std::uint64_t universe = std::uint64_t{1} << n;
  if (universe < 64 && (words[0] >> universe) != 0) throw InputError("bits_hex sets bits beyond 2^n");
  return CubeSet::from_words(n, std::move(words));
}

Json to_json(const CubeSet& a) {
  Json j;
  j["n"] = a.dim();
  j["vertices"] = a.members();
  j["bits_hex"] = to_bits_hex(a);
  return j;
}

CubeSet cubeset_from_json(const Json& j) {
  const int n = read_dim(j);
  std::optional<CubeSet> from_hex;
  if (j.contains("bits_hex")) {
    if (!j["bits_hex"].is_string()) throw InputError("\"bits_hex\" must be a string");
    from_hex = from_bits_hex(n, j["bits_hex"].get<std::string>());
  }
  if (!j.contains("vertices")) {
    if (!from_hex) throw InputError("set file needs \"vertices\" or \"bits_hex\"");
    return *from_hex;
  }
  if (!j["vertices"].is_array()) throw InputError("\"vertices\" must be an array");
  std::vector<Vertex> vertices;
  vertices.reserve(j["vertices"].size());
  for (const auto& v : j["vertices"]) {
    if (!v.is_number_integer()) throw InputError("vertex indices must be integers");
    const auto x = v.get<long long>();
    if (x < 0 || static_cast<std::uint64_t>(x) >= (std::uint64_t{1} << n)) {
      throw InputError("vertex index " + std::to_string(x) + " outside [0, 2^" + std::to_string(n) + ")");
    }
    vertices.push_back(static_cast<Vertex>(x));
  }
  CubeSet a = CubeSet::from_vertices(n, vertices);
  if (from_hex && !(*from_hex == a)) throw InputError("\"vertices\" and \"bits_hex\" describe different sets");
  return a;
}

Json to_json(const PseudoBooleanFn& f) {
  Json j;
  j["n"] = f.dim();
  j["values"] = std::vector<double>(f.values().begin(), f.values().end());
  return j;
}

PseudoBooleanFn function_from_json(const Json& j) {
  const int n = read_dim(j);
  if (!j.contains("values") || !j["values"].is_array()) throw InputError("function file needs a \"values\" array");
  std::vector<double> values;
  values.reserve(j["values"].size());
  for (const auto& v : j["values"]) {
    if (!v.is_number()) throw InputError("function values must be numbers");
    values.push_back(v.get<double>());
  }
  return PseudoBooleanFn(n, std::move(values));
}

Json to_json(const SubCube& c) {
  Json fixed = Json::array();
  for (auto [coord, bit] : c.assignments()) fixed.push_back({coord, bit});
  return Json{{"fixed", fixed}};
}

SubCube subcube_from_json(int n, const Json& j) {
  if (!j.is_object() || !j.contains("fixed") || !j["fixed"].is_array()) {
    throw InputError("subcube needs a \"fixed\" array");
  }
  std::vector<std::pair<int, int>> fixed;
  for (const auto& entry : j["fixed"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() || !entry[1].is_number_integer()) {
      throw InputError("fixed entries must be [coord, bit] pairs");
    }
    fixed.emplace_back(entry[0].get<int>(), entry[1].get<int>());
  }
  return SubCube::from_assignments(n, fixed);
}

Json to_json(const IsoReport& r) {
  return Json{{"boundary", r.boundary}, {"bound", number(r.bound)}, {"excess", number(r.excess)}, {"alpha", r.alpha}};
}

Json to_json(const InfluenceProfile& p) {
  Json exact = Json::array();
  Json approx = Json::array();
  for (int i = 1; i <= p.n; ++i) {
    exact.push_back(p.influence(i).to_string());
    approx.push_back(p.influence(i).to_double());
  }
  return Json{{"influences", approx},
              {"influences_exact", exact},
              {"total", p.total().to_double()},
              {"max_coordinate", p.max_coordinate()}};
}

Json to_json(const SectionTable& t) {
  Json entries = Json::object();
  for (const auto& e : t.entries) {
    entries[std::to_string(e.y)] = Json{{"count", e.count},
                                        {"boundary", e.boundary},
                                        {"alpha", e.alpha},
                                        {"excess", number(e.excess)}};
  }
  return Json{{"n", t.n},
              {"i_coords", t.i_coords.to_list()},
              {"size", t.set_size},
              {"entropy", t.entropy},
              {"weighted_excess", number(t.weighted_excess)},
              {"sections", entries}};
}

Json to_json(const SplitBookkeeping& b) {
  return Json{{"coord", b.split_coord},   {"minus_value", b.minus_value}, {"minus_size", b.minus_size},
              {"plus_size", b.plus_size}, {"gamma", b.gamma},             {"k", b.k},
              {"k_minus", b.k_minus},     {"k_plus", b.k_plus},           {"b_j", b.b_j},
              {"h_gamma", b.h_gamma},     {"k_tilde", b.k_tilde},         {"delta", b.delta},
              {"degenerate", b.degenerate}};
}

Json to_json(const TraceNode& node) {
  Json j{{"case", std::string(to_string(node.kind))},
         {"region", to_json(node.region)["fixed"]},
         {"size", node.size},
         {"budget", node.budget},
         {"error", node.error}};
  if (node.split) {
    j.update(to_json(*node.split));
  } else {
    for (const char* key : {"coord", "gamma", "k_minus", "k_plus", "b_j", "k_tilde"}) j[key] = nullptr;
  }
  if (node.base_rejected) j["base_rejected"] = true;
  Json children = Json::array();
  for (const auto& child : node.children) children.push_back(to_json(child));
  j["children"] = children;
  return j;
}

Json to_json(const DecompositionResult& r) {
  Json cubes = Json::array();
  for (const auto& c : r.cubes) cubes.push_back(to_json(c));
  return Json{{"n", r.n},
              {"cubes", cubes},
              {"cube_count", r.cubes.size()},
              {"sym_diff", r.sym_diff},
              {"budget", r.budget},
              {"eps_achieved", r.eps_achieved},
              {"root_excess", r.root_excess},
              {"paper_bound_L", number(r.paper_bound_L)},
              {"paper_bound_log2_log2_L", number(r.paper_bound_log2_log2)},
              {"cleanup_merges", r.cleanup_merges},
              {"cleanup_recovered", r.cleanup_recovered},
              {"trace", to_json(r.trace)}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

CubeSet read_set_file(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  try {
    return cubeset_from_json(j);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_set_file(const std::filesystem::path& path, const CubeSet& a) { write_text(path, to_json(a).dump() + "\n"); }

PseudoBooleanFn read_function_file(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  try {
    return function_from_json(j);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace isocube
