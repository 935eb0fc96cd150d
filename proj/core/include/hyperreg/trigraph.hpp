#pragma once

#include "hyperreg/bigraph.hpp"
#include "hyperreg/bits.hpp"
#include "hyperreg/hypergraph.hpp"
#include "hyperreg/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace hyperreg {

/// Ternary relation E ⊆ X×Y×Z; one y×z bit plane per x.
class Trigraph {
 public:
  Trigraph() = default;
  Trigraph(std::size_t x_size, std::size_t y_size, std::size_t z_size)
      : x_(x_size), y_(y_size), z_(z_size), rel_(x_size * y_size, z_size) {}

  std::size_t x_size() const { return x_; }
  std::size_t y_size() const { return y_; }
  std::size_t z_size() const { return z_; }

  bool test(std::size_t x, std::size_t y, std::size_t z) const { return rel_.test(x * y_ + y, z); }
  void set(std::size_t x, std::size_t y, std::size_t z, bool on = true) { rel_.set(x * y_ + y, z, on); }
  std::size_t count() const { return rel_.count(); }

  /// Bitset over Z of {z : (x,y,z) ∈ E}.
  std::span<const Word> fiber(std::size_t x, std::size_t y) const { return rel_.row(x * y_ + y); }
  const BitMatrix& bits() const { return rel_; }

  /// H[A',B',C'].
  Trigraph sub(std::span<const std::size_t> xs, std::span<const std::size_t> ys,
               std::span<const std::size_t> zs) const;

  /// d_H(X,Y,Z) over the full classes.
  Rational density() const;

  friend bool operator==(const Trigraph&, const Trigraph&) = default;

 private:
  std::size_t x_ = 0, y_ = 0, z_ = 0;
  BitMatrix rel_;
};

/// Three vertex classes with the bigraphs E_XY, E_XZ, E_YZ.
class Triad {
 public:
  Triad() = default;
  Triad(Bigraph xy, Bigraph xz, Bigraph yz);
  static Triad complete(std::size_t x_size, std::size_t y_size, std::size_t z_size);

  std::size_t x_size() const { return xy_.u_size(); }
  std::size_t y_size() const { return xy_.v_size(); }
  std::size_t z_size() const { return xz_.v_size(); }

  const Bigraph& xy() const { return xy_; }
  const Bigraph& xz() const { return xz_; }
  const Bigraph& yz() const { return yz_; }

  bool is_triangle(std::size_t x, std::size_t y, std::size_t z) const {
    return xy_.has_edge(x, y) && xz_.has_edge(x, z) && yz_.has_edge(y, z);
  }
  /// Bitset over Z of the triangles through (x,y); all-zero when (x,y) ∉ E_XY.
  std::vector<Word> triangle_fiber(std::size_t x, std::size_t y) const;

  /// G[A',B',C'].
  Triad sub(std::span<const std::size_t> xs, std::span<const std::size_t> ys, std::span<const std::size_t> zs) const;

  friend bool operator==(const Triad&, const Triad&) = default;

 private:
  Bigraph xy_, xz_, yz_;
};

/// |K₃(G)| by bit-parallel intersection of N_XZ(x) and N_YZ(y) over the edges xy.
std::size_t triangle_count(const Triad& g);
/// K₃(G) in lexicographic order.
std::vector<Triple> enumerate_triangles(const Triad& g);
/// Indicator trigraph of K₃(G).
Trigraph triangle_indicator(const Triad& g);

struct RelativeCounts {
  std::size_t in_relation = 0;  // |R ∩ K₃(G)|
  std::size_t triangles = 0;    // |K₃(G)|
  bool vacuous() const { return triangles == 0; }
};

RelativeCounts relative_counts(const Trigraph& h, const Triad& g);
/// d_H(G) = |R ∩ K₃(G)| / |K₃(G)|, defined as 0 when K₃(G) is empty.
Rational relative_density(const Trigraph& h, const Triad& g);
/// H|G: the relation R ∩ K₃(G).
Trigraph restrict_to(const Trigraph& h, const Triad& g);
/// G underlies H iff R ⊆ K₃(G).
bool underlies(const Triad& g, const Trigraph& h);

/// The trigraph (V,V,V; Ē) with every ordered version of each edge.
Trigraph lift(const ThreeGraph& h);
/// The bigraph (V,V; Ē): a symmetric matrix with zero diagonal.
Bigraph lift(const SimpleGraph& g);
/// Ē restricted to X×Y×Z for (not necessarily disjoint) vertex lists.
Trigraph lift(const ThreeGraph& h, std::span<const std::size_t> xs, std::span<const std::size_t> ys,
              std::span<const std::size_t> zs);

/// N_F(x) = {(y,z) : (x,y,z) ∈ F} as a y×z bit matrix.
BitMatrix arity1_neighborhood(const Trigraph& f, std::size_t x);
/// N_F(x,y) = {z : (x,y,z) ∈ F}.
std::vector<std::size_t> arity2_neighborhood(const Trigraph& f, std::size_t x, std::size_t y);

}  // namespace hyperreg
