#include "hyperreg/construct.hpp"
#include "hyperreg/decomp.hpp"
#include "hyperreg/quasirandom.hpp"
#include "hyperreg/rng.hpp"
#include "hyperreg/trigraph.hpp"

#include <benchmark/benchmark.h>

using namespace hyperreg;

namespace {

Bigraph random_bigraph(std::size_t u, std::size_t v, double p, Rng& rng) {
  Bigraph g(u, v);
  for (std::size_t a = 0; a < u; ++a)
    for (std::size_t b = 0; b < v; ++b)
      if (rng.bernoulli(p)) g.add_edge(a, b);
  return g;
}

void BM_Dev2Float(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto b = random_bigraph(n, n, 0.5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(dev2(b).normalized_sum);
}
BENCHMARK(BM_Dev2Float)->RangeMultiplier(2)->Range(16, 512);

void BM_Dev2Exact(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto b = random_bigraph(n, n, 0.5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(dev2(b, Arithmetic::Exact).exact_normalized);
}
BENCHMARK(BM_Dev2Exact)->RangeMultiplier(2)->Range(8, 64);

void BM_Triangles(benchmark::State& state) {
  Rng rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Triad g(random_bigraph(n, n, 0.5, rng), random_bigraph(n, n, 0.5, rng), random_bigraph(n, n, 0.5, rng));
  for (auto _ : state) benchmark::DoNotOptimize(triangle_count(g));
}
BENCHMARK(BM_Triangles)->RangeMultiplier(2)->Range(16, 512);

void BM_Dev23(benchmark::State& state) {
  Rng rng(4);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Triad g(random_bigraph(n, n, 0.8, rng), random_bigraph(n, n, 0.8, rng), random_bigraph(n, n, 0.8, rng));
  Trigraph h(n, n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (rng.bernoulli(0.3)) h.set(x, y, z);
  for (auto _ : state) benchmark::DoNotOptimize(dev23(h, g).normalized);
}
BENCHMARK(BM_Dev23)->RangeMultiplier(2)->Range(8, 64);

void BM_TriadTable(benchmark::State& state) {
  const auto l = static_cast<std::size_t>(state.range(0));
  const auto lb = lower_bound_instance(CanonicalKind::M, l, 48, 5, 1.0);
  for (auto _ : state) {
    TriadTable table(lb.instance.natural, &lb.instance.graph);
    benchmark::DoNotOptimize(table.size());
  }
}
BENCHMARK(BM_TriadTable)->DenseRange(2, 4);

void BM_Audit(benchmark::State& state) {
  const auto l = static_cast<std::size_t>(state.range(0));
  const auto lb = lower_bound_instance(CanonicalKind::M, l, 48, 6, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(audit(lb.instance.graph, lb.instance.natural, 0.1, 0.05).regular);
}
BENCHMARK(BM_Audit)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
