#include "hyperreg/trigraph.hpp"

#include "hyperreg/errors.hpp"

namespace hyperreg {

namespace {

void check_indices(std::span<const std::size_t> idx, std::size_t bound) {
  for (std::size_t i : idx)
    if (i >= bound) throw DomainError("subset index out of range");
}

void check_shape(const Trigraph& h, const Triad& g) {
  if (h.x_size() != g.x_size() || h.y_size() != g.y_size() || h.z_size() != g.z_size())
    throw DomainError("trigraph and triad shapes differ");
}

}  // namespace

Trigraph Trigraph::sub(std::span<const std::size_t> xs, std::span<const std::size_t> ys, std::span<const std::size_t> zs) const {
  check_indices(xs, x_);
  check_indices(ys, y_);
  check_indices(zs, z_);
  Trigraph out(xs.size(), ys.size(), zs.size());
  for (std::size_t a = 0; a < xs.size(); ++a)
    for (std::size_t b = 0; b < ys.size(); ++b)
      for (std::size_t c = 0; c < zs.size(); ++c)
        if (test(xs[a], ys[b], zs[c])) out.set(a, b, c);
  return out;
}

Rational Trigraph::density() const {
  if (x_ == 0 || y_ == 0 || z_ == 0) throw DomainError("empty part");
  return make_rational(count(), x_ * y_ * z_);
}

Triad::Triad(Bigraph xy, Bigraph xz, Bigraph yz) : xy_(std::move(xy)), xz_(std::move(xz)), yz_(std::move(yz)) {
  if (xz_.u_size() != xy_.u_size() || yz_.u_size() != xy_.v_size() || yz_.v_size() != xz_.v_size())
    throw DomainError("triad component dimensions disagree");
}

Triad Triad::complete(std::size_t x_size, std::size_t y_size, std::size_t z_size) {
  return Triad(Bigraph::complete(x_size, y_size), Bigraph::complete(x_size, z_size), Bigraph::complete(y_size, z_size));
}

std::vector<Word> Triad::triangle_fiber(std::size_t x, std::size_t y) const {
  std::vector<Word> out(words_for(z_size()), 0);
  if (!xy_.has_edge(x, y)) return out;
  auto a = xz_.row(x);
  auto b = yz_.row(y);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

Triad Triad::sub(std::span<const std::size_t> xs, std::span<const std::size_t> ys, std::span<const std::size_t> zs) const {
  check_indices(xs, x_size());
  check_indices(ys, y_size());
  check_indices(zs, z_size());
  return Triad(xy_.restricted(xs, ys), xz_.restricted(xs, zs), yz_.restricted(ys, zs));
}

std::size_t triangle_count(const Triad& g) {
  std::size_t total = 0;
  for (std::size_t x = 0; x < g.x_size(); ++x) {
    auto nxz = g.xz().row(x);
    for (std::size_t y = 0; y < g.y_size(); ++y)
      if (g.xy().has_edge(x, y)) total += popcount_and(nxz, g.yz().row(y));
  }
  return total;
}

std::vector<Triple> enumerate_triangles(const Triad& g) {
  std::vector<Triple> out;
  for (std::size_t x = 0; x < g.x_size(); ++x)
    for (std::size_t y = 0; y < g.y_size(); ++y) {
      if (!g.xy().has_edge(x, y)) continue;
      auto fiber = g.triangle_fiber(x, y);
      for (std::size_t wi = 0; wi < fiber.size(); ++wi)
        for (Word w = fiber[wi]; w; w &= w - 1)
          out.push_back({x, y, wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w))});
    }
  return out;
}

Trigraph triangle_indicator(const Triad& g) {
  Trigraph t(g.x_size(), g.y_size(), g.z_size());
  for (std::size_t x = 0; x < g.x_size(); ++x)
    for (std::size_t y = 0; y < g.y_size(); ++y) {
      if (!g.xy().has_edge(x, y)) continue;
      auto fiber = g.triangle_fiber(x, y);
      for (std::size_t z = 0; z < g.z_size(); ++z)
        if ((fiber[z / kWordBits] >> (z % kWordBits)) & 1U) t.set(x, y, z);
    }
  return t;
}

RelativeCounts relative_counts(const Trigraph& h, const Triad& g) {
  check_shape(h, g);
  RelativeCounts c;
  for (std::size_t x = 0; x < g.x_size(); ++x) {
    auto nxz = g.xz().row(x);
    for (std::size_t y = 0; y < g.y_size(); ++y) {
      if (!g.xy().has_edge(x, y)) continue;
      auto nyz = g.yz().row(y);
      c.triangles += popcount_and(nxz, nyz);
      c.in_relation += popcount_and3(nxz, nyz, h.fiber(x, y));
    }
  }
  return c;
}

Rational relative_density(const Trigraph& h, const Triad& g) {
  const auto c = relative_counts(h, g);
  if (c.vacuous()) return Rational(0);
  return make_rational(c.in_relation, c.triangles);
}

Trigraph restrict_to(const Trigraph& h, const Triad& g) {
  check_shape(h, g);
  Trigraph out(h.x_size(), h.y_size(), h.z_size());
  for (std::size_t x = 0; x < g.x_size(); ++x)
    for (std::size_t y = 0; y < g.y_size(); ++y) {
      if (!g.xy().has_edge(x, y)) continue;
      auto fiber = g.triangle_fiber(x, y);
      auto rel = h.fiber(x, y);
      for (std::size_t z = 0; z < g.z_size(); ++z)
        if (((fiber[z / kWordBits] & rel[z / kWordBits]) >> (z % kWordBits)) & 1U) out.set(x, y, z);
    }
  return out;
}

bool underlies(const Triad& g, const Trigraph& h) {
  check_shape(h, g);
  return relative_counts(h, g).in_relation == h.count();
}

Trigraph lift(const ThreeGraph& h) {
  const std::size_t n = h.n();
  Trigraph t(n, n, n);
  for (const auto& e : h.edges()) {
    const std::size_t a = e[0], b = e[1], c = e[2];
    t.set(a, b, c);
    t.set(a, c, b);
    t.set(b, a, c);
    t.set(b, c, a);
    t.set(c, a, b);
    t.set(c, b, a);
  }
  return t;
}

Trigraph lift(const ThreeGraph& h, std::span<const std::size_t> xs, std::span<const std::size_t> ys,
              std::span<const std::size_t> zs) {
  check_indices(xs, h.n());
  check_indices(ys, h.n());
  check_indices(zs, h.n());
  Trigraph t(xs.size(), ys.size(), zs.size());
  for (std::size_t a = 0; a < xs.size(); ++a)
    for (std::size_t b = 0; b < ys.size(); ++b) {
      auto nb = h.pair_neighborhood(xs[a], ys[b]);
      for (std::size_t c = 0; c < zs.size(); ++c)
        if ((nb[zs[c] / kWordBits] >> (zs[c] % kWordBits)) & 1U) t.set(a, b, c);
    }
  return t;
}

Bigraph lift(const SimpleGraph& g) { return Bigraph(g.adj_); }

BitMatrix arity1_neighborhood(const Trigraph& f, std::size_t x) {
  if (x >= f.x_size()) throw DomainError("vertex out of range");
  BitMatrix m(f.y_size(), f.z_size());
  for (std::size_t y = 0; y < f.y_size(); ++y)
    for (std::size_t z = 0; z < f.z_size(); ++z)
      if (f.test(x, y, z)) m.set(y, z);
  return m;
}

std::vector<std::size_t> arity2_neighborhood(const Trigraph& f, std::size_t x, std::size_t y) {
  if (x >= f.x_size() || y >= f.y_size()) throw DomainError("vertex out of range");
  std::vector<std::size_t> out;
  for (std::size_t z = 0; z < f.z_size(); ++z)
    if (f.test(x, y, z)) out.push_back(z);
  return out;
}

}  // namespace hyperreg
