#include "hyperreg/decomposition.hpp"
#include "hyperreg/errors.hpp"
#include "hyperreg/hypergraph.hpp"
#include "hyperreg/trigraph.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace hyperreg;

TEST_CASE("bigraph density and restriction") {
  auto g = Bigraph::complete(3, 70);
  CHECK(g.edge_count() == 210);
  CHECK(g.density() == 1);
  g.remove_edge(1, 65);
  CHECK(g.degree(1) == 69);
  const Subset rows{1, 2}, cols{65, 0};
  auto r = g.restricted(rows, cols);
  CHECK_FALSE(r.has_edge(0, 0));
  CHECK(r.has_edge(0, 1));
  CHECK(r.edge_count() == 3);
  CHECK(density(g, rows, cols) == make_rational(3, 4));
  CHECK(g.transposed().transposed() == g);
  CHECK_THROWS_AS(Bigraph(0, 3).density(), DomainError);
}

TEST_CASE("three-graph stores unordered triples") {
  ThreeGraph h(6);
  h.add_edge(4, 1, 2);
  h.add_edge(0, 1, 5);
  CHECK(h.edge_count() == 2);
  CHECK(h.has_edge(2, 4, 1));
  CHECK_FALSE(h.has_edge(0, 1, 2));
  const auto e = h.edges();
  REQUIRE(e.size() == 2);
  CHECK(e[0] == Triple{0, 1, 5});
  CHECK(e[1] == Triple{1, 2, 4});
  h.remove_edge(2, 1, 4);
  CHECK(h.edge_count() == 1);
  CHECK_THROWS_AS(h.add_edge(1, 1, 2), DomainError);
}

TEST_CASE("triangle counting matches brute force") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t a = 1 + rng.below(9), b = 1 + rng.below(9), c = 1 + rng.below(80);
    auto g = oracle::random_triad(a, b, c, 0.6, rng);
    CHECK(triangle_count(g) == oracle::triangles(g));
    CHECK(enumerate_triangles(g).size() == oracle::triangles(g));
    CHECK(triangle_indicator(g).count() == oracle::triangles(g));
  }
}

TEST_CASE("relative density and restriction") {
  Rng rng(5);
  auto g = oracle::random_triad(5, 6, 7, 0.7, rng);
  auto h = oracle::random_trigraph(5, 6, 7, 0.5, rng);
  std::size_t k = 0, r = 0;
  for (std::size_t x = 0; x < 5; ++x)
    for (std::size_t y = 0; y < 6; ++y)
      for (std::size_t z = 0; z < 7; ++z)
        if (oracle::is_triangle(g, x, y, z)) {
          ++k;
          r += h.test(x, y, z);
        }
  CHECK(relative_density(h, g) == make_rational(r, k));
  auto res = restrict_to(h, g);
  CHECK(res.count() == r);
  CHECK(underlies(g, res));
  CHECK(relative_density(h, Triad(Bigraph(5, 6), Bigraph::complete(5, 7), Bigraph::complete(6, 7))) == 0);
}

TEST_CASE("lift of a three-graph is symmetric") {
  ThreeGraph h(5);
  h.add_edge(0, 2, 4);
  auto t = lift(h);
  CHECK(t.count() == 6);
  CHECK(t.test(4, 0, 2));
  CHECK(t.test(2, 4, 0));
  const Subset xs{0, 1}, ys{2, 3}, zs{4, 0};
  auto part = lift(h, xs, ys, zs);
  CHECK(part.count() == 1);
  CHECK(part.test(0, 0, 0));
  CHECK(arity2_neighborhood(t, 0, 2) == std::vector<std::size_t>{4});
  CHECK(arity1_neighborhood(t, 0).count() == 2);
}

TEST_CASE("simple graph lift is a symmetric bigraph") {
  SimpleGraph g(4);
  g.add_edge(0, 3);
  g.add_edge(1, 2);
  auto b = lift(g);
  CHECK(b.edge_count() == 4);
  CHECK(b.has_edge(3, 0));
  CHECK_FALSE(b.has_edge(0, 0));
}

TEST_CASE("decomposition validation and lookup") {
  std::vector<Subset> blocks{{0, 2}, {1, 3, 4}};
  auto p = Decomposition::symmetric(5, blocks, 2, [](std::size_t, std::size_t, std::size_t x, std::size_t y) {
    return static_cast<Color>((x + y) % 2);
  });
  CHECK(p.t() == 2);
  CHECK(p.color_of(2, 1) == 1);
  CHECK(p.color_of(1, 2) == 1);
  CHECK(p.color_of(0, 4) == 0);
  CHECK(p.class_size(0, 1, 0) + p.class_size(0, 1, 1) == 6);
  CHECK(p.class_bigraph(0, 1, 1).edge_count() == p.class_size(0, 1, 1));
  CHECK(p.is_equipartition());
  CHECK_THROWS_AS(Decomposition::uniform(5, {{0, 1}, {1, 2, 3, 4}}), DomainError);
  CHECK_THROWS_AS(Decomposition::uniform(5, {{0, 1}, {2, 3}}), DomainError);
  CHECK_FALSE(Decomposition::uniform(5, {{0}, {1, 2, 3, 4}}).is_equipartition());
}
