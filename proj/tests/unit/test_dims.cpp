#include "hyperreg/dims.hpp"
#include "hyperreg/errors.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace hyperreg;

namespace {

// a = (0,1), b = (2,3), c_S = 4 + S; every other triple is random.
ThreeGraph planted_vc2_two(std::size_t n, Rng& rng) {
  ThreeGraph h = oracle::random_three_graph(n, 0.5, rng);
  for (std::size_t s = 0; s < 16; ++s)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        const std::size_t c = 4 + s;
        if ((s >> (i * 2 + j)) & 1U)
          h.add_edge(i, 2 + j, c);
        else
          h.remove_edge(i, 2 + j, c);
      }
  return h;
}

}  // namespace

TEST_CASE("vc2 k=1 matches the pair-link oracle") {
  Rng rng(11);
  int positives = 0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 3 + rng.below(10);
    const double p = (t % 3 == 0) ? 0.0 : (t % 3 == 1 ? 1.0 : rng.unit());
    ThreeGraph h = oracle::random_three_graph(n, p, rng);
    if (t % 5 == 0 && n >= 4) h.toggle_edge(0, 1, 2);
    const auto s = vc2_at_least(h, 1);
    const bool want = oracle::vc2_at_least_one(h);
    CHECK((s.outcome == SearchOutcome::Found) == want);
    if (s.witness) CHECK(verify(h, *s.witness));
    positives += want;
  }
  CHECK(positives > 5);
}

TEST_CASE("vc2 k=2 exhaustive agrees with brute force") {
  Rng rng(12);
  for (int t = 0; t < 4; ++t) {
    ThreeGraph h = planted_vc2_two(20, rng);
    CHECK(oracle::vc2_at_least_two(h));
    const auto s = vc2_at_least(h, 2);
    REQUIRE(s.outcome == SearchOutcome::Found);
    CHECK(verify(h, *s.witness));
  }
  for (int t = 0; t < 4; ++t) {
    ThreeGraph h = oracle::random_three_graph(20, 0.5, rng);
    CHECK((vc2_at_least(h, 2).outcome == SearchOutcome::Found) == oracle::vc2_at_least_two(h));
  }
  ThreeGraph small(19);
  CHECK(vc2_at_least(small, 2).outcome == SearchOutcome::Absent);
}

TEST_CASE("vc2 randomized mode and value") {
  Rng rng(13);
  ThreeGraph h = planted_vc2_two(20, rng);
  const auto r = vc2_at_least(h, 2, Vc2Mode::Randomized, 200000, 5);
  if (r.witness) CHECK(verify(h, *r.witness));
  CHECK(r.outcome != SearchOutcome::Absent);
  const auto v = vc2(h, 1);
  CHECK(v.value == 1);
  CHECK_FALSE(v.exact);
  const auto v2 = vc2(h, 2, 10, 1);
  CHECK(v2.value == 2);
  CHECK_FALSE(v2.exact);
  ThreeGraph empty(10);
  const auto v0 = vc2(empty, 3);
  CHECK(v0.value == 0);
  CHECK(v0.exact);
  CHECK_THROWS_AS(vc2_at_least(h, 3, Vc2Mode::Exhaustive), SizeError);
  CHECK_THROWS_AS(vc2_at_least(h, 5, Vc2Mode::Randomized), SizeError);
}

TEST_CASE("witness verification rejects tampering") {
  Rng rng(14);
  ThreeGraph h = planted_vc2_two(20, rng);
  auto w = *vc2_at_least(h, 2).witness;
  CHECK(verify(h, w));
  auto bad = w;
  std::swap(bad.c[0], bad.c[15]);
  CHECK_FALSE(verify(h, bad));
  bad = w;
  bad.c.pop_back();
  CHECK_FALSE(verify(h, bad));
}

TEST_CASE("quotient is idempotent and irreducible") {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    const std::size_t u = 1 + rng.below(12), v = 1 + rng.below(12);
    Bigraph g = oracle::random_bigraph(u, v, 0.5, rng);
    // Duplicate some rows to force non-trivial classes.
    Bigraph big(u * 2, v);
    for (std::size_t a = 0; a < u * 2; ++a)
      for (std::size_t b = 0; b < v; ++b)
        if (g.has_edge(a % u, b)) big.add_edge(a, b);
    const auto q = sim_quotient(big);
    CHECK(oracle::irreducible(q.graph));
    CHECK(sim_quotient(q.graph).graph == q.graph);
    CHECK(is_irreducible(q.graph));
    CHECK(q.row_classes.size() <= u);
    for (std::size_t a = 0; a < big.u_size(); ++a)
      for (std::size_t b = 0; b < big.v_size(); ++b)
        CHECK(big.has_edge(a, b) == q.graph.has_edge(q.row_class[a], q.col_class[b]));
  }
}

TEST_CASE("canonical bigraphs") {
  for (std::size_t k = 1; k <= 10; ++k) {
    for (auto kind : {CanonicalKind::H, CanonicalKind::M, CanonicalKind::Mbar}) {
      const auto g = canonical(kind, k);
      CHECK(g.u_size() == k);
      if (k >= 2 || kind != CanonicalKind::Mbar) CHECK(oracle::irreducible(g));
    }
    const auto u = canonical(CanonicalKind::Ubg, k);
    CHECK(u.u_size() == (std::size_t{1} << k));
    CHECK(oracle::irreducible(u));
  }
  CHECK(canonical(CanonicalKind::H, 3).has_edge(0, 2));
  CHECK_FALSE(canonical(CanonicalKind::H, 3).has_edge(2, 0));
  CHECK(canonical(CanonicalKind::Ubg, 2).has_edge(1, 0));
  CHECK_FALSE(canonical(CanonicalKind::Ubg, 2).has_edge(2, 0));
  CHECK(parse_canonical_kind("mBaR") == CanonicalKind::Mbar);
  CHECK_FALSE(parse_canonical_kind("X"));
  CHECK_THROWS_AS(canonical(CanonicalKind::Ubg, 21), SizeError);
}

TEST_CASE("find_induced agrees with enumeration") {
  Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    Bigraph host = oracle::random_bigraph(1 + rng.below(6), 1 + rng.below(6), rng.unit(), rng);
    Bigraph pat = oracle::random_bigraph(1 + rng.below(3), 1 + rng.below(3), rng.unit(), rng);
    const auto s = find_induced(host, pat);
    CHECK((s.outcome == SearchOutcome::Found) == oracle::has_induced_copy(host, pat));
    if (s.embedding) CHECK(verify_induced(host, pat, *s.embedding));
  }
}

TEST_CASE("find_induced budget and canonical search") {
  const auto u = canonical(CanonicalKind::Ubg, 4);
  const auto s = find_canonical(u, 3);
  REQUIRE(s.hit);
  CHECK(s.hit->kind == CanonicalKind::H);
  CHECK(verify_induced(u, canonical(CanonicalKind::H, 3), s.hit->embedding));
  const auto m = canonical(CanonicalKind::M, 5);
  const auto sm = find_canonical(m, 3);
  REQUIRE(sm.hit);
  CHECK(sm.hit->kind == CanonicalKind::M);
  Bigraph dup(2, 1);
  CHECK_THROWS_AS(find_canonical(dup, 1), DomainError);
  const auto tiny = find_induced(canonical(CanonicalKind::M, 8), canonical(CanonicalKind::H, 4), 3);
  CHECK(tiny.outcome == SearchOutcome::Unknown);
  CHECK(tiny.nodes <= 3);
}

TEST_CASE("g-dimension check with and without an embedding") {
  // G = M(2), Γ has one A and one B vertex joined by color 0, n = 2.
  const auto g = canonical(CanonicalKind::M, 2);
  BipartiteColoredGraph gamma(1, 1, 2);
  ThreeGraph h(6);
  // A = {0}, B = {1}, C_0 = {2,3}, C_1 = {4,5}; (0,0) ∈ E(G), (0,1) ∉ E(G).
  h.add_edge(0, 1, 2);
  h.add_edge(0, 1, 3);
  BlowupEmbedding e{{0}, {1}, {{2, 3}, {4, 5}}};
  auto v = g_dimension_check(h, g, 2, gamma, e);
  CHECK(v.verified);
  const auto found = g_dimension_check(h, g, 2, gamma, std::nullopt);
  CHECK(found.outcome == SearchOutcome::Found);
  REQUIRE(found.embedding);
  CHECK(g_dimension_check(h, g, 2, gamma, found.embedding).verified);
  h.add_edge(0, 1, 5);
  v = g_dimension_check(h, g, 2, gamma, e);
  CHECK_FALSE(v.verified);
  REQUIRE(v.violation);
  CHECK((*v.violation)[2] == 5);
  CHECK_FALSE(v.expected_edge);
  CHECK(g_dimension_check(h, g, 2, gamma, std::nullopt).outcome == SearchOutcome::Absent);
  ThreeGraph none(6);
  CHECK(g_dimension_check(none, g, 2, gamma, std::nullopt).outcome == SearchOutcome::Absent);
  BipartiteColoredGraph wrong(1, 1, 3);
  CHECK_THROWS_AS(g_dimension_check(h, g, 2, wrong, e), DomainError);
  BlowupEmbedding clash{{0}, {0}, {{2, 3}, {4, 5}}};
  CHECK_THROWS_AS(g_dimension_check(h, g, 2, gamma, clash), DomainError);
  CHECK_THROWS_AS(g_dimension_check(ThreeGraph(16), g, 2, gamma, std::nullopt), SizeError);
}

TEST_CASE("irreducible bigraph enumeration") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto all = irreducible_bigraphs(n);
    CHECK_FALSE(all.empty());
    for (const auto& g : all) CHECK(oracle::irreducible(g));
    // No two representatives are row permutations of each other.
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j)
        if (all[i].v_size() == all[j].v_size()) {
          bool iso = false;
          std::vector<std::size_t> p(n);
          std::iota(p.begin(), p.end(), 0);
          do {
            std::vector<std::vector<bool>> ci, cj;
            for (std::size_t c = 0; c < all[i].v_size(); ++c) {
              std::vector<bool> x(n), y(n);
              for (std::size_t r = 0; r < n; ++r) {
                x[p[r]] = all[i].has_edge(r, c);
                y[r] = all[j].has_edge(r, c);
              }
              ci.push_back(x);
              cj.push_back(y);
            }
            std::sort(ci.begin(), ci.end());
            std::sort(cj.begin(), cj.end());
            iso |= ci == cj;
          } while (std::next_permutation(p.begin(), p.end()));
          CHECK_FALSE(iso);
        }
  }
  // n = 2: 12 separating column families, 8 orbits under the row swap.
  CHECK(irreducible_bigraphs(2).size() == 8);
  CHECK_THROWS_AS(irreducible_bigraphs(5), SizeError);
}
