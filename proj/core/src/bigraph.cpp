#include "hyperreg/bigraph.hpp"

#include "hyperreg/errors.hpp"

#include <numeric>

namespace hyperreg {

Bigraph Bigraph::complete(std::size_t u_size, std::size_t v_size) {
  Bigraph g(u_size, v_size);
  for (std::size_t u = 0; u < u_size; ++u) {
    auto row = g.adj_.row(u);
    for (auto& w : row) w = ~Word{0};
    if (!row.empty()) row.back() &= g.adj_.tail_mask();
  }
  return g;
}

Bigraph Bigraph::from_edges(std::size_t u_size, std::size_t v_size, std::span<const std::pair<std::size_t, std::size_t>> edges) {
  Bigraph g(u_size, v_size);
  for (auto [u, v] : edges) {
    if (u >= u_size || v >= v_size) throw DomainError("bigraph edge out of range");
    g.add_edge(u, v);
  }
  return g;
}

Rational Bigraph::density() const {
  if (u_size() == 0 || v_size() == 0) throw DomainError("empty part");
  return make_rational(edge_count(), u_size() * v_size());
}

Bigraph Bigraph::transposed() const {
  Bigraph t(v_size(), u_size());
  for (std::size_t u = 0; u < u_size(); ++u) {
    auto r = row(u);
    for (std::size_t wi = 0; wi < r.size(); ++wi) {
      Word w = r[wi];
      while (w) {
        const std::size_t v = wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
        t.add_edge(v, u);
        w &= w - 1;
      }
    }
  }
  return t;
}

Bigraph Bigraph::restricted(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  Bigraph r(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (rows[a] >= u_size()) throw DomainError("row index out of range");
    for (std::size_t b = 0; b < cols.size(); ++b) {
      if (cols[b] >= v_size()) throw DomainError("column index out of range");
      if (has_edge(rows[a], cols[b])) r.add_edge(a, b);
    }
  }
  return r;
}

Rational density(const Bigraph& g, std::span<const std::size_t> xs, std::span<const std::size_t> ys) {
  if (xs.empty() || ys.empty()) throw DomainError("empty part");
  std::size_t e = 0;
  for (std::size_t x : xs) {
    if (x >= g.u_size()) throw DomainError("vertex out of range");
    for (std::size_t y : ys) {
      if (y >= g.v_size()) throw DomainError("vertex out of range");
      e += g.has_edge(x, y) ? 1 : 0;
    }
  }
  return make_rational(e, xs.size() * ys.size());
}

Subset full_subset(std::size_t n) {
  Subset s(n);
  std::iota(s.begin(), s.end(), std::size_t{0});
  return s;
}

}  // namespace hyperreg
