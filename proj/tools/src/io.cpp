#include "hyperreg/cli/io.hpp"

#include "hyperreg/errors.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

namespace hyperreg::io {

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) return {};
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(), static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  if (text.empty()) return {};
  if (text.size() % 4 != 0) throw IoError("base64 length is not a multiple of 4");
  std::vector<std::uint8_t> out(3 * (text.size() / 4));
  const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()), static_cast<int>(text.size()));
  if (n < 0) throw IoError("malformed base64");
  std::size_t pad = 0;
  if (text.back() == '=') ++pad;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++pad;
  out.resize(static_cast<std::size_t>(n) - pad);
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw IoError("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("cannot write " + path);
}

json parse(std::string_view text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw IoError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

json read_json(const std::string& path) { return parse(read_file(path), path); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json envelope(std::string_view type) {
  json j = json::object();
  j["format"] = kFormat;
  j["type"] = type;
  return j;
}

void expect(const json& j, std::string_view type) {
  if (!j.is_object()) throw IoError("expected a JSON object");
  if (!j.contains("format") || j["format"] != kFormat) throw IoError("unsupported format (want hyperreg-v1)");
  if (!j.contains("type") || j["type"] != type) throw IoError("expected a " + std::string(type) + " document");
}

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw IoError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw IoError(std::string("field '") + key + "' has the wrong type");
  }
}

/// LSB-first bytes of one bit row.
std::string pack_row(std::span<const Word> row, std::size_t bits) {
  std::vector<std::uint8_t> bytes((bits + 7) / 8, 0);
  for (std::size_t i = 0; i < bits; ++i)
    if ((row[i / kWordBits] >> (i % kWordBits)) & 1U) bytes[i / 8] |= static_cast<std::uint8_t>(1U << (i % 8));
  return base64_encode(bytes);
}

std::vector<bool> unpack_row(const std::string& text, std::size_t bits) {
  const auto bytes = base64_decode(text);
  if (bytes.size() != (bits + 7) / 8) throw IoError("bit row has the wrong length");
  std::vector<bool> out(bits);
  for (std::size_t i = 0; i < bits; ++i) out[i] = (bytes[i / 8] >> (i % 8)) & 1U;
  return out;
}

std::string pack_bits(const std::vector<bool>& bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(1U << (i % 8));
  return base64_encode(bytes);
}

template <class Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw IoError(std::string("invalid document: ") + e.what());
  }
}

}  // namespace

json to_json(const Bigraph& g) {
  json j = envelope("bigraph");
  j["u_size"] = g.u_size();
  j["v_size"] = g.v_size();
  json rows = json::array();
  for (std::size_t u = 0; u < g.u_size(); ++u) rows.push_back(pack_row(g.row(u), g.v_size()));
  j["rows"] = rows;
  return j;
}

Bigraph bigraph_from_json(const json& j) {
  expect(j, "bigraph");
  const auto u = field<std::size_t>(j, "u_size"), v = field<std::size_t>(j, "v_size");
  const auto rows = field<std::vector<std::string>>(j, "rows");
  if (rows.size() != u) throw IoError("bigraph needs u_size rows");
  Bigraph g(u, v);
  for (std::size_t a = 0; a < u; ++a) {
    const auto bits = unpack_row(rows[a], v);
    for (std::size_t b = 0; b < v; ++b)
      if (bits[b]) g.add_edge(a, b);
  }
  return g;
}

json to_json(const ThreeGraph& h) {
  json j = envelope("threegraph");
  j["n"] = h.n();
  j["edge_count"] = h.edge_count();
  // Bit r is the r-th triple a<b<c in lexicographic order.
  std::vector<bool> bits;
  const std::size_t n = h.n();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) bits.push_back(h.has_edge(a, b, c));
  j["triples"] = pack_bits(bits);
  return j;
}

ThreeGraph threegraph_from_json(const json& j) {
  expect(j, "threegraph");
  const auto n = field<std::size_t>(j, "n");
  return guarded([&] {
    ThreeGraph h(n);
    if (j.contains("edges")) {
      for (const auto& e : field<std::vector<std::vector<std::size_t>>>(j, "edges")) {
        if (e.size() != 3) throw IoError("edges must be triples");
        h.add_edge(e[0], e[1], e[2]);
      }
      return h;
    }
    const auto bytes = base64_decode(field<std::string>(j, "triples"));
    const std::size_t total = n < 3 ? 0 : n * (n - 1) * (n - 2) / 6;
    if (bytes.size() != (total + 7) / 8) throw IoError("triple bitset has the wrong length");
    std::size_t r = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c, ++r)
          if ((bytes[r / 8] >> (r % 8)) & 1U) h.add_edge(a, b, c);
    return h;
  });
}

json to_json(const Trigraph& t) {
  json j = envelope("trigraph");
  j["x_size"] = t.x_size();
  j["y_size"] = t.y_size();
  j["z_size"] = t.z_size();
  json fibers = json::array();
  for (std::size_t x = 0; x < t.x_size(); ++x)
    for (std::size_t y = 0; y < t.y_size(); ++y) fibers.push_back(pack_row(t.fiber(x, y), t.z_size()));
  j["fibers"] = fibers;
  return j;
}

Trigraph trigraph_from_json(const json& j) {
  expect(j, "trigraph");
  const auto x = field<std::size_t>(j, "x_size"), y = field<std::size_t>(j, "y_size"), z = field<std::size_t>(j, "z_size");
  const auto fibers = field<std::vector<std::string>>(j, "fibers");
  if (fibers.size() != x * y) throw IoError("trigraph needs x_size·y_size fibers");
  Trigraph t(x, y, z);
  for (std::size_t a = 0; a < x; ++a)
    for (std::size_t b = 0; b < y; ++b) {
      const auto bits = unpack_row(fibers[a * y + b], z);
      for (std::size_t c = 0; c < z; ++c)
        if (bits[c]) t.set(a, b, c);
    }
  return t;
}

json to_json(const Triad& g) {
  json j = envelope("triad");
  j["xy"] = to_json(g.xy());
  j["xz"] = to_json(g.xz());
  j["yz"] = to_json(g.yz());
  return j;
}

Triad triad_from_json(const json& j) {
  expect(j, "triad");
  return guarded([&] {
    return Triad(bigraph_from_json(field<json>(j, "xy")), bigraph_from_json(field<json>(j, "xz")),
                 bigraph_from_json(field<json>(j, "yz")));
  });
}

json to_json(const Decomposition& p) {
  json j = envelope("decomposition");
  j["n"] = p.n();
  j["ell"] = p.ell();
  j["blocks"] = p.blocks();
  json colors = json::array();
  for (std::size_t i = 0; i < p.t(); ++i)
    for (std::size_t k = 0; k < p.t(); ++k) {
      const auto c = p.pair_colors(i, k);
      colors.push_back(base64_encode(std::span<const std::uint8_t>(c.data(), c.size())));
    }
  j["pair_colors"] = colors;
  return j;
}

Decomposition decomposition_from_json(const json& j) {
  expect(j, "decomposition");
  const auto n = field<std::size_t>(j, "n"), ell = field<std::size_t>(j, "ell");
  auto blocks = field<std::vector<Subset>>(j, "blocks");
  const auto colors = field<std::vector<std::string>>(j, "pair_colors");
  if (colors.size() != blocks.size() * blocks.size()) throw IoError("decomposition needs t² color tables");
  std::vector<std::vector<Color>> tables;
  for (const auto& c : colors) tables.push_back(base64_decode(c));
  return guarded([&] { return Decomposition(n, std::move(blocks), ell, std::move(tables)); });
}

json to_json(const EdgeColoredBigraph& g) {
  json j = envelope("ecb");
  j["u_size"] = g.u_size();
  j["v_size"] = g.v_size();
  j["num_colors"] = g.num_colors();
  json rows = json::array();
  for (std::size_t u = 0; u < g.u_size(); ++u)
    rows.push_back(base64_encode(std::span<const std::uint8_t>(g.colors().data() + u * g.v_size(), g.v_size())));
  j["rows"] = rows;
  return j;
}

EdgeColoredBigraph ecb_from_json(const json& j) {
  expect(j, "ecb");
  const auto u = field<std::size_t>(j, "u_size"), v = field<std::size_t>(j, "v_size");
  const auto k = field<std::size_t>(j, "num_colors");
  const auto rows = field<std::vector<std::string>>(j, "rows");
  if (rows.size() != u) throw IoError("ecb needs u_size rows");
  return guarded([&] {
    EdgeColoredBigraph g(u, v, k);
    for (std::size_t a = 0; a < u; ++a) {
      const auto bytes = base64_decode(rows[a]);
      if (bytes.size() != v) throw IoError("ecb row has the wrong length");
      for (std::size_t b = 0; b < v; ++b) g.set_color(a, b, bytes[b]);
    }
    return g;
  });
}

json to_json(const BipartiteColoredGraph& g) {
  json j = envelope("colored");
  j["a_size"] = g.a_size();
  j["b_size"] = g.b_size();
  j["num_colors"] = g.num_colors();
  json rows = json::array();
  for (std::size_t a = 0; a < g.a_size(); ++a) {
    std::vector<std::uint8_t> bytes;
    for (std::size_t b = 0; b < g.b_size(); ++b) {
      const auto c = g.color(a, b);
      bytes.push_back(static_cast<std::uint8_t>(c & 0xff));
      bytes.push_back(static_cast<std::uint8_t>(c >> 8));
    }
    rows.push_back(base64_encode(bytes));
  }
  j["rows"] = rows;
  return j;
}

BipartiteColoredGraph colored_from_json(const json& j) {
  expect(j, "colored");
  const auto a = field<std::size_t>(j, "a_size"), b = field<std::size_t>(j, "b_size");
  const auto k = field<std::size_t>(j, "num_colors");
  const auto rows = field<std::vector<std::string>>(j, "rows");
  if (rows.size() != a) throw IoError("colored graph needs a_size rows");
  std::vector<BipartiteColoredGraph::ColorIndex> colors;
  for (const auto& r : rows) {
    const auto bytes = base64_decode(r);
    if (bytes.size() != 2 * b) throw IoError("colored row has the wrong length");
    for (std::size_t y = 0; y < b; ++y)
      colors.push_back(static_cast<BipartiteColoredGraph::ColorIndex>(bytes[2 * y] | (bytes[2 * y + 1] << 8)));
  }
  return guarded([&] { return BipartiteColoredGraph(a, b, k, std::move(colors)); });
}

}  // namespace hyperreg::io
