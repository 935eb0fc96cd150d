#pragma once

#include "hyperreg/bits.hpp"
#include "hyperreg/rational.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace hyperreg {

using Subset = std::vector<std::size_t>;

/// Directed bipartite relation E ⊆ U×V stored as bit-packed rows (one row per u).
class Bigraph {
 public:
  Bigraph() = default;
  Bigraph(std::size_t u_size, std::size_t v_size) : adj_(u_size, v_size) {}
  explicit Bigraph(BitMatrix adj) : adj_(std::move(adj)) {}

  static Bigraph complete(std::size_t u_size, std::size_t v_size);
  static Bigraph from_edges(std::size_t u_size, std::size_t v_size,
                            std::span<const std::pair<std::size_t, std::size_t>> edges);
  template <class Pred>
  static Bigraph from_predicate(std::size_t u_size, std::size_t v_size, Pred&& pred) {
    Bigraph g(u_size, v_size);
    for (std::size_t u = 0; u < u_size; ++u)
      for (std::size_t v = 0; v < v_size; ++v)
        if (pred(u, v)) g.add_edge(u, v);
    return g;
  }

  std::size_t u_size() const { return adj_.rows(); }
  std::size_t v_size() const { return adj_.cols(); }
  std::size_t edge_count() const { return adj_.count(); }
  std::size_t degree(std::size_t u) const { return adj_.row_count(u); }

  bool has_edge(std::size_t u, std::size_t v) const { return adj_.test(u, v); }
  void add_edge(std::size_t u, std::size_t v) { adj_.set(u, v, true); }
  void remove_edge(std::size_t u, std::size_t v) { adj_.set(u, v, false); }
  void set_edge(std::size_t u, std::size_t v, bool on) { adj_.set(u, v, on); }

  std::span<const Word> row(std::size_t u) const { return adj_.row(u); }
  const BitMatrix& matrix() const { return adj_; }

  /// Exact density |E| / (|U||V|). Throws DomainError on an empty side.
  Rational density() const;

  Bigraph transposed() const;
  /// Induced restriction to the listed rows and columns (in the given order).
  Bigraph restricted(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  /// Columns as bitsets over U.
  BitMatrix columns() const { return transposed().adj_; }

  friend bool operator==(const Bigraph&, const Bigraph&) = default;

 private:
  BitMatrix adj_;
};

/// d_G(X,Y) = |E ∩ (X×Y)| / (|X||Y|).
Rational density(const Bigraph& g, std::span<const std::size_t> xs, std::span<const std::size_t> ys);

/// All of [0, n).
Subset full_subset(std::size_t n);

}  // namespace hyperreg
