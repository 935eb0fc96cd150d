#pragma once

#include "hyperreg/bigraph.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hyperreg {

using Color = std::uint8_t;

/// (t,ℓ)-decomposition: vertex blocks V_1..V_t and, for every ordered block pair (i,j),
/// a color in [ℓ] for each (x,y) ∈ V_i×V_j. Colors are stored row-major in the listed block order.
class Decomposition {
 public:
  static constexpr std::size_t kMaxColors = 256;

  Decomposition() = default;
  /// `pair_colors[i*t+j]` holds |V_i|·|V_j| colors. Throws DomainError unless blocks partition [n]
  /// and every color is < ell.
  Decomposition(std::size_t n, std::vector<Subset> blocks, std::size_t ell, std::vector<std::vector<Color>> pair_colors);

  /// Colors given by `color(i, j, x, y)` for i <= j over global vertices; (j,i) mirrors (i,j).
  static Decomposition symmetric(std::size_t n, std::vector<Subset> blocks, std::size_t ell,
                                 const std::function<Color(std::size_t, std::size_t, std::size_t, std::size_t)>& color);
  /// A single color on every pair product.
  static Decomposition uniform(std::size_t n, std::vector<Subset> blocks);

  std::size_t n() const { return block_of_.size(); }
  std::size_t t() const { return blocks_.size(); }
  std::size_t ell() const { return ell_; }

  const std::vector<Subset>& blocks() const { return blocks_; }
  const Subset& block(std::size_t i) const { return blocks_[i]; }
  std::size_t block_size(std::size_t i) const { return blocks_[i].size(); }
  std::size_t block_of(std::size_t v) const { return block_of_[v]; }
  std::size_t position_of(std::size_t v) const { return position_[v]; }

  std::span<const Color> pair_colors(std::size_t i, std::size_t j) const { return colors_[i * t() + j]; }
  Color color_at(std::size_t i, std::size_t j, std::size_t px, std::size_t py) const {
    return colors_[i * t() + j][px * blocks_[j].size() + py];
  }
  /// Color of the ordered pair (x,y) of global vertices.
  Color color_of(std::size_t x, std::size_t y) const {
    return color_at(block_of_[x], block_of_[y], position_[x], position_[y]);
  }

  std::size_t class_size(std::size_t i, std::size_t j, std::size_t alpha) const;
  /// (V_i, V_j; P_ij^α) in block-position coordinates.
  Bigraph class_bigraph(std::size_t i, std::size_t j, std::size_t alpha) const;

  bool is_equipartition() const;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;

 private:
  std::vector<Subset> blocks_;
  std::size_t ell_ = 0;
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> position_;
  std::vector<std::vector<Color>> colors_;
};

}  // namespace hyperreg
