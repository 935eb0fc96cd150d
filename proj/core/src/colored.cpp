#include "hyperreg/colored.hpp"

#include "hyperreg/errors.hpp"

namespace hyperreg {

BipartiteColoredGraph::BipartiteColoredGraph(std::size_t a_size, std::size_t b_size, std::size_t num_colors)
    : a_(a_size), b_(b_size), k_(num_colors), colors_(a_size * b_size, 0) {
  if (num_colors == 0 || num_colors > 65536) throw DomainError("color count must be in [1, 65536]");
}

BipartiteColoredGraph::BipartiteColoredGraph(std::size_t a_size, std::size_t b_size, std::size_t num_colors,
                                             std::vector<ColorIndex> colors)
    : BipartiteColoredGraph(a_size, b_size, num_colors) {
  if (colors.size() != a_size * b_size) throw DomainError("color table size mismatch");
  for (ColorIndex c : colors)
    if (c >= num_colors) throw DomainError("color out of range");
  colors_ = std::move(colors);
}

void BipartiteColoredGraph::set_color(std::size_t a, std::size_t b, ColorIndex c) {
  if (c >= k_) throw DomainError("color out of range");
  colors_[a * b_ + b] = c;
}

Bigraph BipartiteColoredGraph::color_class(std::size_t u) const {
  Bigraph g(a_, b_);
  for (std::size_t a = 0; a < a_; ++a)
    for (std::size_t b = 0; b < b_; ++b)
      if (color(a, b) == u) g.add_edge(a, b);
  return g;
}

std::size_t BipartiteColoredGraph::class_size(std::size_t u) const {
  std::size_t n = 0;
  for (ColorIndex c : colors_) n += (c == u);
  return n;
}

EdgeColoredBigraph::EdgeColoredBigraph(std::size_t u_size, std::size_t v_size, std::size_t num_colors, std::uint8_t fill)
    : u_(u_size), v_(v_size), k_(num_colors), colors_(u_size * v_size, fill) {
  if (num_colors < 2 || num_colors > 256) throw DomainError("edge-colored bigraph needs 2 to 256 colors");
  if (fill >= num_colors) throw DomainError("color out of range");
}

void EdgeColoredBigraph::set_color(std::size_t u, std::size_t v, std::uint8_t c) {
  if (c >= k_) throw DomainError("color out of range");
  colors_[u * v_ + v] = c;
}

std::vector<Word> EdgeColoredBigraph::neighborhood(std::size_t u, std::uint8_t c) const {
  std::vector<Word> out(words_for(v_), 0);
  for (std::size_t v = 0; v < v_; ++v)
    if (color(u, v) == c) out[v / kWordBits] |= Word{1} << (v % kWordBits);
  return out;
}

std::size_t EdgeColoredBigraph::count(std::uint8_t c) const {
  std::size_t n = 0;
  for (auto x : colors_) n += (x == c);
  return n;
}

}  // namespace hyperreg
