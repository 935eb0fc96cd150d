#pragma once

#include "hyperreg/colored.hpp"
#include "hyperreg/decomposition.hpp"
#include "hyperreg/hypergraph.hpp"
#include "hyperreg/trigraph.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hyperreg::io {

using json = nlohmann::json;

inline constexpr std::string_view kFormat = "hyperreg-v1";

std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws IoError on malformed input.
std::vector<std::uint8_t> base64_decode(std::string_view text);
std::string sha256_hex(std::string_view data);

/// Whole file as bytes; throws IoError.
std::string read_file(const std::string& path);
/// Throws IoError when the file cannot be written.
void write_file(const std::string& path, std::string_view data);

/// Parses JSON; malformed text throws IoError naming line and column.
json parse(std::string_view text, const std::string& source = "<input>");
json read_json(const std::string& path);
/// Two-space indentation plus a trailing newline.
std::string dump(const json& j);

/// Object carrying the format tag and the type name.
json envelope(std::string_view type);
/// Throws IoError unless `j` is tagged kFormat and `type`.
void expect(const json& j, std::string_view type);

json to_json(const Bigraph& g);
json to_json(const ThreeGraph& h);
json to_json(const Trigraph& t);
json to_json(const Triad& g);
json to_json(const Decomposition& p);
json to_json(const EdgeColoredBigraph& g);
json to_json(const BipartiteColoredGraph& g);

Bigraph bigraph_from_json(const json& j);
ThreeGraph threegraph_from_json(const json& j);
Trigraph trigraph_from_json(const json& j);
Triad triad_from_json(const json& j);
Decomposition decomposition_from_json(const json& j);
EdgeColoredBigraph ecb_from_json(const json& j);
BipartiteColoredGraph colored_from_json(const json& j);

}  // namespace hyperreg::io
