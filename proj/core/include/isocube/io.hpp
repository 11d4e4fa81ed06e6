#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "isocube/cubeset.hpp"
#include "isocube/decomposition.hpp"
#include "isocube/hypercontractivity.hpp"
#include "isocube/isoperimetry.hpp"
#include "isocube/sections.hpp"

namespace isocube {

using Json = nlohmann::ordered_json;

/// Little-endian bitmap: byte k covers vertices 8k..8k+7, vertex 8k+b in bit b;
/// two lowercase hex digits per byte, at least one byte.
std::string to_bits_hex(const CubeSet& a);
CubeSet from_bits_hex(int n, std::string_view hex);

/// {"n", "vertices", "bits_hex"}. Readers accept either field; when both are
/// present they must describe the same set.
Json to_json(const CubeSet& a);
CubeSet cubeset_from_json(const Json& j);

Json to_json(const PseudoBooleanFn& f);
PseudoBooleanFn function_from_json(const Json& j);

/// {"fixed": [[coord, bit], ...]}
Json to_json(const SubCube& c);
SubCube subcube_from_json(int n, const Json& j);

Json to_json(const IsoReport& r);
Json to_json(const InfluenceProfile& p);
/// Entries keyed by the decimal encoding of y.
Json to_json(const SectionTable& t);
Json to_json(const SplitBookkeeping& b);
Json to_json(const TraceNode& node);
Json to_json(const DecompositionResult& r);

/// Throws IoError (with the path) when the file cannot be read or parsed.
Json read_json_file(const std::filesystem::path& path);
/// "-" writes to standard output.
void write_text(const std::filesystem::path& path, std::string_view text);

CubeSet read_set_file(const std::filesystem::path& path);
void write_set_file(const std::filesystem::path& path, const CubeSet& a);
PseudoBooleanFn read_function_file(const std::filesystem::path& path);

}  // namespace isocube
