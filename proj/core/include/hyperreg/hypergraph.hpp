#pragma once

#include "hyperreg/bigraph.hpp"
#include "hyperreg/bits.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace hyperreg {

using Pair = std::pair<std::size_t, std::size_t>;
using Triple = std::array<std::size_t, 3>;

/// Graph on [n]; edges are unordered pairs without loops.
class SimpleGraph {
 public:
  explicit SimpleGraph(std::size_t n = 0) : n_(n), adj_(n, n) {}
  SimpleGraph(std::size_t n, std::span<const Pair> edges);

  std::size_t n() const { return n_; }
  std::size_t edge_count() const { return adj_.count() / 2; }
  bool has_edge(std::size_t a, std::size_t b) const { return adj_.test(a, b); }
  void add_edge(std::size_t a, std::size_t b);
  std::vector<Pair> edges() const;
  /// N_G(x).
  std::vector<std::size_t> neighborhood(std::size_t x) const;

 private:
  friend Bigraph lift(const SimpleGraph& g);
  std::size_t n_;
  BitMatrix adj_;
};

/// 3-uniform hypergraph on [n]. Storage holds every ordered version of each edge: row x*n+y is N(xy) as a bitset over z.
class ThreeGraph {
 public:
  static constexpr std::size_t kMaxVertices = 1024;

  explicit ThreeGraph(std::size_t n = 0);
  ThreeGraph(std::size_t n, std::span<const Triple> edges);

  std::size_t n() const { return n_; }
  std::size_t edge_count() const { return edges_; }

  bool has_edge(std::size_t a, std::size_t b, std::size_t c) const { return bits_.test(a * n_ + b, c); }
  /// No-op if already present; throws DomainError unless a, b, c are distinct and < n.
  void add_edge(std::size_t a, std::size_t b, std::size_t c);
  void remove_edge(std::size_t a, std::size_t b, std::size_t c);
  void toggle_edge(std::size_t a, std::size_t b, std::size_t c);

  /// N(xy) as a bitset over [n].
  std::span<const Word> pair_neighborhood(std::size_t x, std::size_t y) const { return bits_.row(x * n_ + y); }

  /// Sorted edges, each with a < b < c.
  std::vector<Triple> edges() const;

  friend bool operator==(const ThreeGraph&, const ThreeGraph&) = default;

 private:
  void set_all(std::size_t a, std::size_t b, std::size_t c, bool on);
  std::size_t n_;
  std::size_t edges_ = 0;
  BitMatrix bits_;
};

}  // namespace hyperreg
