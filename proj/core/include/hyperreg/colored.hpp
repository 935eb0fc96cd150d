#pragma once

#include "hyperreg/bigraph.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hyperreg {

/// (A ∪ B, (P_u)_{u∈U}): every pair of A×B carries one color in [num_colors).
class BipartiteColoredGraph {
 public:
  using ColorIndex = std::uint16_t;

  BipartiteColoredGraph() = default;
  BipartiteColoredGraph(std::size_t a_size, std::size_t b_size, std::size_t num_colors);
  /// Throws DomainError on a size mismatch or an out-of-range color.
  BipartiteColoredGraph(std::size_t a_size, std::size_t b_size, std::size_t num_colors, std::vector<ColorIndex> colors);

  std::size_t a_size() const { return a_; }
  std::size_t b_size() const { return b_; }
  std::size_t num_colors() const { return k_; }
  ColorIndex color(std::size_t a, std::size_t b) const { return colors_[a * b_ + b]; }
  void set_color(std::size_t a, std::size_t b, ColorIndex c);
  const std::vector<ColorIndex>& colors() const { return colors_; }

  /// P_u as an A×B bigraph.
  Bigraph color_class(std::size_t u) const;
  std::size_t class_size(std::size_t u) const;

  friend bool operator==(const BipartiteColoredGraph&, const BipartiteColoredGraph&) = default;

 private:
  std::size_t a_ = 0, b_ = 0, k_ = 0;
  std::vector<ColorIndex> colors_;
};

/// (U, V; E_0, …, E_r): a total coloring of U×V by r+1 colors.
class EdgeColoredBigraph {
 public:
  EdgeColoredBigraph() = default;
  EdgeColoredBigraph(std::size_t u_size, std::size_t v_size, std::size_t num_colors, std::uint8_t fill = 0);

  std::size_t u_size() const { return u_; }
  std::size_t v_size() const { return v_; }
  std::size_t num_colors() const { return k_; }
  std::uint8_t color(std::size_t u, std::size_t v) const { return colors_[u * v_ + v]; }
  void set_color(std::size_t u, std::size_t v, std::uint8_t c);
  const std::vector<std::uint8_t>& colors() const { return colors_; }

  /// N_{E_c}(u) as a bitset over V.
  std::vector<Word> neighborhood(std::size_t u, std::uint8_t c) const;
  std::size_t count(std::uint8_t c) const;

  friend bool operator==(const EdgeColoredBigraph&, const EdgeColoredBigraph&) = default;

 private:
  std::size_t u_ = 0, v_ = 0, k_ = 0;
  std::vector<std::uint8_t> colors_;
};

}  // namespace hyperreg
