#include "hyperreg/errors.hpp"
#include "hyperreg/quasirandom.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace hyperreg;

namespace {

Bigraph block_bigraph(std::size_t m) {
  return Bigraph::from_predicate(2 * m, 2 * m, [m](std::size_t u, std::size_t v) { return (u < m) == (v < m); });
}

}  // namespace

TEST_CASE("dev2 of the complete bigraph vanishes") {
  auto r = dev2(Bigraph::complete(7, 9), Arithmetic::Exact);
  CHECK(*r.exact_normalized == 0);
  CHECK(r.normalized_sum == 0);
  CHECK(r.passes(0.0));
}

TEST_CASE("dev2 of the block bigraph is one sixteenth") {
  CHECK(oracle::dev2_normalized_rational(block_bigraph(2)) == make_rational(1, 16));
  for (std::size_t m : {2, 4, 8, 16}) {
    auto r = dev2(block_bigraph(m), Arithmetic::Exact);
    CHECK(*r.exact_normalized == make_rational(1, 16));
    CHECK(r.normalized_sum == Catch::Approx(1.0 / 16).epsilon(1e-12));
  }
}

TEST_CASE("dev2 matches the quadruple sum") {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t u = 1 + rng.below(12), v = 1 + rng.below(12);
    auto b = oracle::random_bigraph(u, v, rng.unit(), rng);
    const auto want = oracle::dev2_normalized(b);
    auto exact = dev2(b, Arithmetic::Exact);
    auto approx = dev2(b);
    CHECK(*exact.exact_normalized == want);
    CHECK(approx.normalized_sum == Catch::Approx(to_double(want)).epsilon(1e-9).margin(1e-300));
  }
  auto big = oracle::random_bigraph(32, 32, 0.5, rng);
  CHECK(*dev2(big, Arithmetic::Exact).exact_normalized == oracle::dev2_normalized(big));
}

TEST_CASE("dev2 is invariant under relabeling and transposition") {
  Rng rng(9);
  auto b = oracle::random_bigraph(10, 13, 0.4, rng);
  Subset rows(10), cols(13);
  for (std::size_t i = 0; i < 10; ++i) rows[i] = i;
  for (std::size_t i = 0; i < 13; ++i) cols[i] = i;
  rng.shuffle(rows);
  rng.shuffle(cols);
  const auto base = *dev2(b, Arithmetic::Exact).exact_normalized;
  CHECK(*dev2(b.restricted(rows, cols), Arithmetic::Exact).exact_normalized == base);
  CHECK(*dev2(b.transposed(), Arithmetic::Exact).exact_normalized == base);
  CHECK(base <= 1);
}

TEST_CASE("dev2 passes against a declared density") {
  auto r = dev2(block_bigraph(2), Arithmetic::Exact);
  CHECK(r.passes(0.07));
  CHECK_FALSE(r.passes(0.05));
  CHECK(r.passes(0.07, make_rational(11, 20)));
  CHECK_FALSE(r.passes(0.07, make_rational(3, 4)));
  CHECK_THROWS_AS(dev2(Bigraph(0, 4)), DomainError);
  CHECK_THROWS_AS(dev2(Bigraph(65, 2), Arithmetic::Exact), SizeError);
}

TEST_CASE("dev23 trivial cases") {
  auto g = Triad::complete(4, 5, 6);
  auto full = triangle_indicator(g);
  auto r = dev23(full, g, Arithmetic::Exact);
  CHECK(*r.exact_octahedral == 0);
  CHECK(r.relative_density == 1);
  auto empty = dev23(Trigraph(4, 5, 6), g, Arithmetic::Exact);
  CHECK(*empty.exact_octahedral == 0);
  CHECK(empty.passes(0, 0));
}

TEST_CASE("dev23 matches the six-index sum") {
  Rng rng(77);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t x = 1 + rng.below(6), y = 1 + rng.below(6), z = 1 + rng.below(6);
    auto g = oracle::random_triad(x, y, z, 0.5 + 0.5 * rng.unit(), rng);
    auto h = oracle::random_trigraph(x, y, z, rng.unit(), rng);
    const auto want = oracle::octahedral(h, g);
    auto exact = dev23(h, g, Arithmetic::Exact);
    CHECK(*exact.exact_octahedral == want);
    auto approx = dev23(h, g);
    CHECK(approx.octahedral_sum == Catch::Approx(to_double(want)).epsilon(1e-9).margin(1e-300));
  }
  auto g = Triad::complete(6, 6, 6);
  auto h = oracle::random_trigraph(6, 6, 6, 0.5, rng);
  CHECK(*dev23(h, g, Arithmetic::Exact).exact_octahedral == oracle::octahedral(h, g));
}

TEST_CASE("dev23 flags degenerate normalization") {
  auto g = Triad(Bigraph(3, 3), Bigraph::complete(3, 3), Bigraph::complete(3, 3));
  auto r = dev23(Trigraph(3, 3, 3), g);
  CHECK(r.degenerate);
  CHECK(r.normalized == 0);
}

TEST_CASE("counting residual") {
  auto c = counting_residual(Triad::complete(3, 4, 5), 1, 1, 1);
  CHECK(c.residual == 0);
  auto e = counting_residual(Triad(Bigraph(3, 4), Bigraph::complete(3, 5), Bigraph::complete(4, 5)), 0, 1, 1);
  CHECK(e.residual == 0);
  CHECK(c.bound(1.0 / 16) == Catch::Approx(4 * 0.5 * 60));
}

TEST_CASE("subtriad deviation") {
  Rng rng(3);
  auto g = oracle::random_triad(8, 8, 8, 0.8, rng);
  auto h = oracle::random_trigraph(8, 8, 8, 0.5, rng);
  const auto all = full_subset(8);
  auto same = subtriad_deviation(h, g, g, all, all, all);
  CHECK(same.lhs == 0);
  const Subset half{0, 2, 4, 6};
  auto sub = g.sub(half, half, half);
  auto s = subtriad_deviation(h, g, sub, half, half, half);
  CHECK(s.sub_triangles == triangle_count(sub));
  Bigraph extra = Bigraph::complete(4, 4);
  CHECK_THROWS_AS(subtriad_deviation(h, g, Triad(extra, extra, extra), half, half, half), DomainError);
}

TEST_CASE("eps regularity exhaustive") {
  CHECK(eps_regular(Bigraph::complete(5, 5), 0.1, RegularityMode::Exhaustive).verdict == RegularityVerdict::ExactPass);
  // Half graph: rows ∅, {0}, {0,1}, {0,1,2}.
  auto half = Bigraph::from_predicate(4, 4, [](std::size_t u, std::size_t v) { return v < u; });
  auto r = eps_regular(half, 0.25, RegularityMode::Exhaustive);
  REQUIRE(r.verdict == RegularityVerdict::ExactFail);
  REQUIRE(r.witness);
  const auto& w = *r.witness;
  CHECK(density(half, w.rows, w.cols) == w.sub_density);
  CHECK(abs(w.sub_density - half.density()) > Rational(0.25));
  CHECK_THROWS_AS(eps_regular(Bigraph(13, 2), 0.5, RegularityMode::Exhaustive), SizeError);
}

TEST_CASE("eps regularity agrees with subset enumeration") {
  Rng rng(41);
  auto b = oracle::random_bigraph(6, 6, 0.5, rng);
  const double eps = 0.45;
  bool any = false;
  const Rational d = b.density();
  for (unsigned am = 1; am < 64; ++am)
    for (unsigned bm = 1; bm < 64; ++bm) {
      Subset rows, cols;
      for (std::size_t i = 0; i < 6; ++i) {
        if (am >> i & 1U) rows.push_back(i);
        if (bm >> i & 1U) cols.push_back(i);
      }
      if (rows.size() < 3 || cols.size() < 3) continue;
      if (abs(density(b, rows, cols) - d) > Rational(eps)) any = true;
    }
  auto r = eps_regular(b, eps, RegularityMode::Exhaustive);
  CHECK((r.verdict == RegularityVerdict::ExactFail) == any);
  auto cert = eps_regular(b, eps, RegularityMode::Certificate);
  CHECK(cert.verdict == RegularityVerdict::Dev2Certified);
  CHECK(cert.level == Catch::Approx(dev2(b).normalized_sum));
  auto sampled = eps_regular(b, eps, RegularityMode::Sampled, 50, 1);
  if (sampled.verdict == RegularityVerdict::ExactFail) CHECK(any);
}

TEST_CASE("neighborhood statistic") {
  CHECK(neighborhood_stat(Triad::complete(4, 4, 9), 1e-4) == 1);
  auto g = Triad(Bigraph::complete(4, 4), Bigraph(4, 9), Bigraph::complete(4, 9));
  CHECK(neighborhood_stat(g, 1e-4) == 1);
  CHECK_THROWS_AS(neighborhood_stat(Triad(Bigraph(2, 2), Bigraph(2, 2), Bigraph(2, 2)), 0.1), DomainError);
}

TEST_CASE("union of color classes") {
  Rng rng(8);
  Bigraph a(32, 32), b(32, 32);
  for (std::size_t u = 0; u < 32; ++u)
    for (std::size_t v = 0; v < 32; ++v) {
      const auto c = rng.below(4);
      if (c == 0) a.add_edge(u, v);
      if (c == 1) b.add_edge(u, v);
    }
  auto r = union_colors(a, b);
  CHECK(r.graph.edge_count() == a.edge_count() + b.edge_count());
  CHECK(r.prediction_holds);
  auto id = union_colors(a, Bigraph(32, 32));
  CHECK(id.graph == a);
  CHECK(id.predicted_density == a.density());
  CHECK_THROWS_AS(union_colors(a, a), DomainError);
}

TEST_CASE("sub-pairs") {
  Rng rng(12);
  auto b = oracle::random_bigraph(48, 48, 0.5, rng);
  auto id = subpair(b, full_subset(48), full_subset(48), 1.0);
  CHECK(id.graph == b);
  CHECK(id.predicted_eps == Catch::Approx(2 * std::pow(id.parent.normalized_sum, 1.0 / 12)));
  auto rows = rng.sample(48, 24), cols = rng.sample(48, 24);
  auto half = subpair(b, rows, cols, 0.5);
  CHECK(half.prediction_holds);
  CHECK_THROWS_AS(subpair(b, rng.sample(48, 10), cols, 0.5), DomainError);
}
