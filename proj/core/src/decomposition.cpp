#include "hyperreg/decomposition.hpp"

#include "hyperreg/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace hyperreg {

namespace {
constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();
}

Decomposition::Decomposition(std::size_t n, std::vector<Subset> blocks, std::size_t ell,
                             std::vector<std::vector<Color>> pair_colors)
    : blocks_(std::move(blocks)), ell_(ell), block_of_(n, kUnassigned), position_(n, 0), colors_(std::move(pair_colors)) {
  if (ell_ == 0 || ell_ > kMaxColors) throw DomainError("ell must be in [1, 256]");
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    for (std::size_t p = 0; p < blocks_[i].size(); ++p) {
      const std::size_t v = blocks_[i][p];
      if (v >= n) throw DomainError("block vertex out of range");
      if (block_of_[v] != kUnassigned) throw DomainError("blocks overlap at vertex " + std::to_string(v));
      block_of_[v] = i;
      position_[v] = p;
    }
  for (std::size_t v = 0; v < n; ++v)
    if (block_of_[v] == kUnassigned) throw DomainError("vertex " + std::to_string(v) + " is in no block");
  const std::size_t t = blocks_.size();
  if (colors_.size() != t * t) throw DomainError("expected one color table per ordered block pair");
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      const auto& c = colors_[i * t + j];
      if (c.size() != blocks_[i].size() * blocks_[j].size())
        throw DomainError("color table size mismatch for pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
      for (Color a : c)
        if (a >= ell_) throw DomainError("color out of range");
    }
}

Decomposition Decomposition::symmetric(std::size_t n, std::vector<Subset> blocks, std::size_t ell,
                                       const std::function<Color(std::size_t, std::size_t, std::size_t, std::size_t)>& color) {
  const std::size_t t = blocks.size();
  std::vector<std::vector<Color>> tables(t * t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i; j < t; ++j) {
      const Subset& bi = blocks[i];
      const Subset& bj = blocks[j];
      auto& fwd = tables[i * t + j];
      auto& rev = tables[j * t + i];
      fwd.resize(bi.size() * bj.size());
      rev.resize(bi.size() * bj.size());
      for (std::size_t a = 0; a < bi.size(); ++a)
        for (std::size_t b = 0; b < bj.size(); ++b) {
          const Color c = color(i, j, bi[a], bj[b]);
          fwd[a * bj.size() + b] = c;
          rev[b * bi.size() + a] = c;
        }
    }
  return Decomposition(n, std::move(blocks), ell, std::move(tables));
}

Decomposition Decomposition::uniform(std::size_t n, std::vector<Subset> blocks) {
  return symmetric(n, std::move(blocks), 1, [](std::size_t, std::size_t, std::size_t, std::size_t) { return Color{0}; });
}

std::size_t Decomposition::class_size(std::size_t i, std::size_t j, std::size_t alpha) const {
  std::size_t c = 0;
  for (Color a : pair_colors(i, j)) c += (a == alpha);
  return c;
}

Bigraph Decomposition::class_bigraph(std::size_t i, std::size_t j, std::size_t alpha) const {
  const std::size_t ni = block_size(i), nj = block_size(j);
  const auto table = pair_colors(i, j);
  Bigraph g(ni, nj);
  for (std::size_t a = 0; a < ni; ++a)
    for (std::size_t b = 0; b < nj; ++b)
      if (table[a * nj + b] == alpha) g.add_edge(a, b);
  return g;
}

bool Decomposition::is_equipartition() const {
  if (blocks_.empty()) return true;
  std::size_t lo = blocks_[0].size(), hi = lo;
  for (const auto& b : blocks_) {
    lo = std::min(lo, b.size());
    hi = std::max(hi, b.size());
  }
  return hi - lo <= 1;
}

}  // namespace hyperreg
