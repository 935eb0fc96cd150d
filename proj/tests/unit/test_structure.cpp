#include "hyperreg/construct.hpp"
#include "hyperreg/errors.hpp"
#include "hyperreg/structure.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace hyperreg;

namespace {

// Rows copy one of `patterns`; a few E₂ entries sprinkled per row.
EdgeColoredBigraph planted(const std::vector<std::vector<int>>& patterns, std::size_t copies, std::size_t noise,
                           Rng& rng) {
  const std::size_t v = patterns[0].size();
  EdgeColoredBigraph g(patterns.size() * copies, v, 3);
  for (std::size_t p = 0; p < patterns.size(); ++p)
    for (std::size_t c = 0; c < copies; ++c) {
      const std::size_t u = p * copies + c;
      for (std::size_t y = 0; y < v; ++y) g.set_color(u, y, static_cast<std::uint8_t>(patterns[p][y]));
      for (std::size_t k = 0; k < noise; ++k) g.set_color(u, rng.below(v), kE2);
    }
  return g;
}

std::vector<int> random_pattern(std::size_t v, Rng& rng) {
  std::vector<int> p(v);
  for (auto& x : p) x = static_cast<int>(rng.below(2));
  return p;
}

}  // namespace

TEST_CASE("E0/E1 copies") {
  EdgeColoredBigraph g(3, 3, 3, kE0);
  g.set_color(1, 2, kE1);
  const auto s = find_e0e1_copy(g, Bigraph::complete(1, 1));
  REQUIRE(s.outcome == SearchOutcome::Found);
  CHECK(s.embedding->row_map[0] == 1);
  CHECK(s.embedding->col_map[0] == 2);
  EdgeColoredBigraph err(4, 4, 3, kE2);
  CHECK(find_e0e1_copy(err, Bigraph(1, 1)).outcome == SearchOutcome::Absent);
  CHECK(find_e0e1_copy(err, Bigraph::complete(2, 2)).outcome == SearchOutcome::Absent);

  // U_bg(2) encoded in rows 2..5 of a larger graph, with E₂ elsewhere.
  const auto ubg = canonical(CanonicalKind::Ubg, 2);
  EdgeColoredBigraph enc(7, 4, 3, kE2);
  for (std::size_t s2 = 0; s2 < 4; ++s2)
    for (std::size_t i = 0; i < 2; ++i) enc.set_color(2 + s2, 1 + i, ubg.has_edge(s2, i) ? kE1 : kE0);
  const auto found = find_e0e1_copy(enc, ubg);
  REQUIRE(found.outcome == SearchOutcome::Found);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      CHECK(enc.color(found.embedding->row_map[a], found.embedding->col_map[b]) == (ubg.has_edge(a, b) ? kE1 : kE0));
}

TEST_CASE("first-fit clustering recovers planted patterns") {
  Rng rng(4);
  std::vector<std::vector<int>> pats;
  for (int i = 0; i < 4; ++i) pats.push_back(random_pattern(40, rng));
  const auto g = planted(pats, 5, 0, rng);
  const auto r = haussler_cluster(g, 0.01, 0.01);
  CHECK(r.u0.empty());
  REQUIRE(r.reps.size() <= 4);
  CHECK(validate(g, r));
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    bool fresh = true;
    for (std::size_t j = 0; j < i; ++j) fresh &= pats[i] != pats[j];
    distinct += fresh;
  }
  CHECK(r.reps.size() == distinct);
  for (std::size_t c = 0; c < r.clusters.size(); ++c) CHECK(r.clusters[c].size() % 5 == 0);

  EdgeColoredBigraph all_err(5, 5, 3, kE2);
  const auto e = haussler_cluster(all_err, 0.5, 0.25);
  CHECK(e.u0.size() == 5);
  CHECK(e.reps.empty());
  CHECK(validate(all_err, e));

  const auto one = haussler_cluster(g, 1.0, 0.01);
  CHECK(one.reps.size() == 1);
  CHECK(one.clusters[0].size() == g.u_size());

  auto tampered = r;
  if (tampered.clusters.size() > 1) {
    std::swap(tampered.clusters[0].back(), tampered.clusters[1].back());
    CHECK_FALSE(validate(g, tampered));
  }
  CHECK_THROWS_AS(haussler_cluster(EdgeColoredBigraph(2, 2, 2), 0.5, 0.5), DomainError);
}

TEST_CASE("no E0/E1 copy of Irr(C) gives fewer than C clusters") {
  Rng rng(5);
  for (std::size_t c = 2; c <= 3; ++c) {
    std::vector<std::vector<int>> pats;
    while (pats.size() < c - 1) {
      auto p = random_pattern(50, rng);
      bool fresh = true;
      for (const auto& q : pats) fresh &= p != q;
      if (fresh) pats.push_back(p);
    }
    const auto g = planted(pats, 6, 1, rng);
    std::size_t e2 = g.count(kE2);
    CHECK(static_cast<double>(e2) <= 0.05 * static_cast<double>(g.u_size() * g.v_size()));
    for (const auto& irr : irreducible_bigraphs(c))
      if (irr.v_size() <= 4) CHECK(find_e0e1_copy(g, irr).outcome == SearchOutcome::Absent);
    const auto r = haussler_cluster(g, 0.1, 0.05);
    CHECK(validate(g, r));
    CHECK(r.reps.size() < c);
  }
}

TEST_CASE("corner graphs of trivial 3-graphs") {
  Rng rng(6);
  const std::size_t n = 12;
  ThreeGraph full(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) full.add_edge(a, b, c);
  const auto p = Decomposition::uniform(n, {{0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9, 10, 11}});
  CornerParams cp;
  for (const auto& cg : corner_graphs(full, p, cp)) {
    CHECK(cg.colors.count(kE1) == cg.colors.u_size() * cg.colors.v_size());
    CHECK(cg.edge_vertices.size() == 1);
    CHECK(cg.corner_vertices.size() == 1);
  }
  for (const auto& cg : corner_graphs(ThreeGraph(n), p, cp))
    CHECK(cg.colors.count(kE0) == cg.colors.u_size() * cg.colors.v_size());
  CHECK_THROWS_AS(corner_graph(full, p, 1, 1, cp), DomainError);
  CornerParams bad;
  bad.lo = 0.6;
  bad.hi = 0.4;
  CHECK_THROWS_AS(corner_graph(full, p, 0, 1, bad), DomainError);
}

TEST_CASE("corner graph and encoding of an M(2) blowup") {
  const auto lb = lower_bound_instance(CanonicalKind::M, 2, 32, 21, 0.01);
  const auto& inst = lb.instance;
  CornerParams cp;
  cp.eps2 = 0.05;
  cp.lo = 0.1;
  cp.hi = 0.9;
  const auto cg = corner_graph(inst.graph, inst.natural, 0, 1, cp);
  REQUIRE(cg.edge_vertices == std::vector<std::size_t>{0, 1});
  REQUIRE(cg.corner_vertices.size() == 2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      const std::size_t v = cg.corner_vertices[c].apex - 2;
      CHECK(cg.colors.color(r, c) == (r == v ? kE1 : kE0));
    }

  CornerParams literal;
  literal.eps2 = 0.05;
  for (const auto& g : corner_graphs(inst.graph, inst.natural, literal)) CHECK(g.colors.count(kE2) == 0);

  const auto m2 = canonical(CanonicalKind::M, 2);
  const auto e = find_encoding(m2, inst.graph, inst.natural, cp);
  REQUIRE(e.outcome == SearchOutcome::Found);
  CHECK(e.encoding->j0 == 0);
  CHECK(e.encoding->k0 == 1);
  CHECK(e.encoding->f == std::vector<std::size_t>{0, 1});
  CHECK(e.encoding->g[0].apex == 2);
  CHECK(e.encoding->g[1].apex == 3);
  CHECK(verify_encoding(m2, inst.graph, inst.natural, cp, *e.encoding));
  auto broken = *e.encoding;
  std::swap(broken.f[0], broken.f[1]);
  CHECK_FALSE(verify_encoding(m2, inst.graph, inst.natural, cp, broken));

  CornerParams reg = cp;
  reg.eps1 = 0.5;
  const auto er = find_encoding(m2, inst.graph, inst.natural, reg);
  REQUIRE(er.outcome == SearchOutcome::Found);
  CHECK(verify_encoding(m2, inst.graph, inst.natural, reg, *er.encoding));

  CHECK(find_encoding(Bigraph::complete(1, 1), ThreeGraph(inst.graph.n()), inst.natural, cp).outcome ==
        SearchOutcome::Absent);
  CHECK(find_encoding(Bigraph::complete(1, 1), inst.graph, inst.natural, cp).outcome == SearchOutcome::Found);
}
