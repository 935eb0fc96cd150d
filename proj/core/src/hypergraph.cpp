#include "hyperreg/hypergraph.hpp"

#include "hyperreg/errors.hpp"

#include <string>

namespace hyperreg {

SimpleGraph::SimpleGraph(std::size_t n, std::span<const Pair> edges) : SimpleGraph(n) {
  for (auto [a, b] : edges) add_edge(a, b);
}

void SimpleGraph::add_edge(std::size_t a, std::size_t b) {
  if (a >= n_ || b >= n_) throw DomainError("graph edge out of range");
  if (a == b) throw DomainError("graph edges are 2-subsets; loop rejected");
  adj_.set(a, b);
  adj_.set(b, a);
}

std::vector<Pair> SimpleGraph::edges() const {
  std::vector<Pair> out;
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = a + 1; b < n_; ++b)
      if (adj_.test(a, b)) out.emplace_back(a, b);
  return out;
}

std::vector<std::size_t> SimpleGraph::neighborhood(std::size_t x) const {
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < n_; ++y)
    if (adj_.test(x, y)) out.push_back(y);
  return out;
}

ThreeGraph::ThreeGraph(std::size_t n) : n_(n) {
  if (n > kMaxVertices) throw SizeError("3-graph with " + std::to_string(n) + " vertices exceeds limit " + std::to_string(kMaxVertices));
  bits_ = BitMatrix(n * n, n);
}

ThreeGraph::ThreeGraph(std::size_t n, std::span<const Triple> edges) : ThreeGraph(n) {
  for (const auto& e : edges) add_edge(e[0], e[1], e[2]);
}

void ThreeGraph::set_all(std::size_t a, std::size_t b, std::size_t c, bool on) {
  if (a >= n_ || b >= n_ || c >= n_) throw DomainError("3-graph edge out of range");
  if (a == b || b == c || a == c) throw DomainError("3-graph edges need three distinct vertices");
  const bool had = has_edge(a, b, c);
  if (had == on) return;
  const std::size_t v[3] = {a, b, c};
  static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& p : perms) bits_.set(v[p[0]] * n_ + v[p[1]], v[p[2]], on);
  edges_ = on ? edges_ + 1 : edges_ - 1;
}

void ThreeGraph::add_edge(std::size_t a, std::size_t b, std::size_t c) { set_all(a, b, c, true); }
void ThreeGraph::remove_edge(std::size_t a, std::size_t b, std::size_t c) { set_all(a, b, c, false); }
void ThreeGraph::toggle_edge(std::size_t a, std::size_t b, std::size_t c) {
  set_all(a, b, c, !(a < n_ && b < n_ && c < n_ && has_edge(a, b, c)));
}

std::vector<Triple> ThreeGraph::edges() const {
  std::vector<Triple> out;
  out.reserve(edges_);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = a + 1; b < n_; ++b) {
      auto row = pair_neighborhood(a, b);
      for (std::size_t wi = 0; wi < row.size(); ++wi) {
        Word w = row[wi];
        // only c > b
        const std::size_t lo = wi * kWordBits;
        if (lo + kWordBits <= b + 1) continue;
        if (lo <= b) w &= ~Word{0} << (b + 1 - lo);
        while (w) {
          out.push_back({a, b, lo + static_cast<std::size_t>(std::countr_zero(w))});
          w &= w - 1;
        }
      }
    }
  return out;
}

}  // namespace hyperreg
