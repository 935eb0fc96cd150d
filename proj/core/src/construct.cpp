#include "hyperreg/construct.hpp"

#include "hyperreg/quasirandom.hpp"
#include "hyperreg/rng.hpp"
#include "hyperreg/trigraph.hpp"

#include <algorithm>
#include <cmath>

namespace hyperreg {

namespace {

PairPartitionReport certify(const BipartiteColoredGraph& gamma, double target) {
  PairPartitionReport r;
  r.a_size = gamma.a_size();
  r.b_size = gamma.b_size();
  r.ell = gamma.num_colors();
  r.target_dev = target;
  r.classes.resize(r.ell);
  const double want = 1.0 / static_cast<double>(r.ell);
  const double gap_limit = std::pow(target, 0.25);
  bool all = true;
  const long long ell = static_cast<long long>(r.ell);
#pragma omp parallel for schedule(dynamic)
  for (long long u = 0; u < ell; ++u) {
    auto& c = r.classes[static_cast<std::size_t>(u)];
    c.color = static_cast<std::size_t>(u);
    const Bigraph cls = gamma.color_class(c.color);
    const auto rep = dev2(cls);
    c.size = rep.edges;
    c.density = to_double(rep.density);
    c.normalized_sum = rep.normalized_sum;
    c.passes = c.normalized_sum <= target && std::abs(c.density - want) <= gap_limit;
  }
  for (const auto& c : r.classes) {
    all = all && c.passes;
    r.worst_sum = std::max(r.worst_sum, c.normalized_sum);
    r.worst_density_gap = std::max(r.worst_density_gap, std::abs(c.density - want));
  }
  r.certified = all;
  return r;
}

void fill_non_crossing(ThreeGraph& h, std::size_t a, std::size_t b, const FillPolicy& fill) {
  if (fill.kind == FillKind::Empty) return;
  if (!(fill.p >= 0 && fill.p <= 1)) throw DomainError("fill probability must lie in [0,1]");
  Rng rng(fill.seed);
  auto side = [&](std::size_t v) { return v < a ? 0 : (v < a + b ? 1 : 2); };
  const std::size_t n = h.n();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = y + 1; z < n; ++z) {
        const int sx = side(x), sy = side(y), sz = side(z);
        if (sx != sy && sx != sz && sy != sz) continue;
        if (rng.bernoulli(fill.p)) h.add_edge(x, y, z);
      }
}

}  // namespace

PairPartition quasirandom_pair_partition(std::size_t a_size, std::size_t b_size, std::size_t ell, double target_dev,
                                         std::uint64_t seed, std::size_t max_retries) {
  if (ell < 1 || ell > 65536) throw DomainError("ℓ must lie in [1, 65536]");
  if (a_size < ell || b_size < ell) throw DomainError("both sides need at least ℓ vertices");
  if (!(target_dev > 0)) throw DomainError("target deviation must be positive");
  Rng rng(seed);
  std::optional<PairPartition> best;
  const std::size_t attempts = std::max<std::size_t>(1, max_retries);
  for (std::size_t t = 1; t <= attempts; ++t) {
    BipartiteColoredGraph gamma(a_size, b_size, ell);
    for (std::size_t x = 0; x < a_size; ++x)
      for (std::size_t y = 0; y < b_size; ++y)
        gamma.set_color(x, y, static_cast<BipartiteColoredGraph::ColorIndex>(rng.below(ell)));
    auto report = certify(gamma, target_dev);
    report.seed = seed;
    report.attempts = t;
    if (report.certified) return PairPartition{std::move(gamma), std::move(report)};
    if (!best || report.worst_sum < best->report.worst_sum) best = PairPartition{std::move(gamma), std::move(report)};
  }
  best->report.attempts = attempts;
  throw GenerationError("pair partition failed certification after " + std::to_string(attempts) + " attempts",
                        best->report);
}

BlowupInstance blowup(const Bigraph& g, const BipartiteColoredGraph& gamma, std::size_t n_per_class,
                      const FillPolicy& fill) {
  if (gamma.num_colors() != g.u_size()) throw DomainError("color index mismatch: Γ must be colored by U(G)");
  if (gamma.a_size() != gamma.b_size() || gamma.a_size() == 0) throw DomainError("Γ needs |A| = |B| > 0");
  if (n_per_class == 0) throw DomainError("n_per_class must be at least 1");
  if (g.u_size() > Decomposition::kMaxColors) throw SizeError("natural decomposition supports at most 256 colors");
  const std::size_t a = gamma.a_size(), b = gamma.b_size(), nv = g.v_size();
  const std::size_t n = a + b + nv * n_per_class;

  BlowupInstance inst;
  inst.base = g;
  inst.gamma = gamma;
  inst.n_per_class = n_per_class;
  auto& lay = inst.layout;
  for (std::size_t x = 0; x < a; ++x) lay.a.push_back(x);
  for (std::size_t y = 0; y < b; ++y) lay.b.push_back(a + y);
  lay.c.resize(nv);
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t z = 0; z < n_per_class; ++z) lay.c[v].push_back(a + b + v * n_per_class + z);

  inst.graph = ThreeGraph(n);
  for (std::size_t x = 0; x < a; ++x)
    for (std::size_t y = 0; y < b; ++y) {
      const std::size_t u = gamma.color(x, y);
      for (std::size_t v = 0; v < nv; ++v)
        if (g.has_edge(u, v))
          for (std::size_t z : lay.c[v]) inst.graph.add_edge(lay.a[x], lay.b[y], z);
    }
  fill_non_crossing(inst.graph, a, b, fill);

  std::vector<Subset> blocks{lay.a, lay.b};
  for (const auto& cv : lay.c) blocks.push_back(cv);
  const std::size_t t = blocks.size();
  std::vector<std::vector<Color>> tables(t * t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) tables[i * t + j].assign(blocks[i].size() * blocks[j].size(), 0);
  for (std::size_t x = 0; x < a; ++x)
    for (std::size_t y = 0; y < b; ++y) {
      const auto c = static_cast<Color>(gamma.color(x, y));
      tables[0 * t + 1][x * b + y] = c;
      tables[1 * t + 0][y * a + x] = c;
    }
  inst.natural = Decomposition(n, std::move(blocks), std::max<std::size_t>(1, g.u_size()), std::move(tables));
  return inst;
}

LowerBoundInstance lower_bound_instance(CanonicalKind kind, std::size_t k, std::size_t n, std::uint64_t seed,
                                        double target_dev, std::size_t max_retries) {
  if (n == 0) throw DomainError("n must be at least 1");
  LowerBoundInstance out;
  out.kind = kind;
  out.k = k;
  const Bigraph base = canonical(kind, k);
  auto part = quasirandom_pair_partition(n, n, base.u_size(), target_dev, seed, max_retries);
  const std::size_t per = std::max<std::size_t>(1, n / base.v_size());
  out.instance = blowup(base, part.gamma, per);
  out.certification = std::move(part.report);
  return out;
}

MergeReport merge_colors_demo(const BlowupInstance& inst, std::size_t u, std::size_t u2) {
  const Bigraph& g = inst.base;
  if (u >= g.u_size() || u2 >= g.u_size()) throw DomainError("color out of range");
  if (u == u2) throw DomainError("merged colors must differ");
  std::optional<std::size_t> pick;
  for (std::size_t v = 0; v < g.v_size() && !pick; ++v)
    if (g.has_edge(u, v) != g.has_edge(u2, v)) pick = v;
  if (!pick) throw DomainError("not distinguished");
  MergeReport r;
  r.u = u;
  r.u2 = u2;
  r.v = *pick;
  const auto& lay = inst.layout;
  const auto& cv = lay.c[r.v];
  const Bigraph xy = Bigraph::from_predicate(lay.a.size(), lay.b.size(), [&](std::size_t x, std::size_t y) {
    const std::size_t c = inst.gamma.color(x, y);
    return c == u || c == u2;
  });
  r.merged_size = xy.edge_count();
  const Triad triad(xy, Bigraph::complete(lay.a.size(), cv.size()), Bigraph::complete(lay.b.size(), cv.size()));
  const auto counts = relative_counts(lift(inst.graph, lay.a, lay.b, cv), triad);
  r.triangles = counts.triangles;
  r.in_relation = counts.in_relation;
  r.density = counts.triangles ? Rational(BigInt(counts.in_relation), BigInt(counts.triangles)) : Rational(0);
  const double d = to_double(r.density);
  r.homogeneous = d < 0.1 || d > 0.9;
  return r;
}

std::optional<std::vector<std::size_t>> find_transversal(const TransversalInput& in, const ThreeGraph& h,
                                                         const ThreeGraph& f) {
  const std::size_t t = in.classes.size();
  if (t > kTransversalMaxParts) throw SizeError("transversal search is limited to 6 classes");
  for (const auto& c : in.classes) {
    if (c.size() > kTransversalMaxClass) throw SizeError("transversal search is limited to 20 vertices per class");
    for (std::size_t v : c)
      if (v >= h.n()) throw DomainError("class vertex outside V(H)");
  }
  if (f.n() != t) throw DomainError("pattern must live on [t]");
  if (in.pairs.size() != t * (t - (t > 0)) / 2) throw DomainError("need one bigraph per class pair");
  auto pair_index = [t](std::size_t i, std::size_t j) { return i * t - i * (i + 1) / 2 + (j - i - 1); };
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i + 1; j < t; ++j) {
      const auto& b = in.pairs[pair_index(i, j)];
      if (b.u_size() != in.classes[i].size() || b.v_size() != in.classes[j].size())
        throw DomainError("pair bigraph shape mismatch");
    }
  std::vector<std::size_t> pos(t), chosen;
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == t) return true;
    for (std::size_t p = 0; p < in.classes[i].size(); ++p) {
      const std::size_t v = in.classes[i][p];
      if (std::find(chosen.begin(), chosen.end(), v) != chosen.end()) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = in.pairs[pair_index(j, i)].has_edge(pos[j], p);
      for (std::size_t j = 0; j < i && ok; ++j)
        for (std::size_t k = j + 1; k < i && ok; ++k) ok = h.has_edge(chosen[j], chosen[k], v) == f.has_edge(j, k, i);
      if (!ok) continue;
      pos[i] = p;
      chosen.push_back(v);
      if (self(self, i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return chosen;
}

std::string HyperValue::to_string() const {
  if (saturated) return "saturated(depth=" + std::to_string(depth) + ")";
  return value.str();
}

namespace {

HyperValue saturated_at(std::size_t depth) {
  HyperValue v;
  v.saturated = true;
  v.depth = depth;
  return v;
}

}  // namespace

HyperValue ack(std::size_t k, const BigInt& x, const AckOptions& opt) {
  if (k < 1 || x < 1) throw DomainError("Ack_k(x) needs k >= 1 and x >= 1");
  if (k == 1) {
    if (x + 1 > opt.bit_limit) return saturated_at(1);
    HyperValue v;
    v.value = BigInt(1) << static_cast<std::size_t>(x);
    return v;
  }
  HyperValue cur;
  cur.value = opt.base;
  std::size_t level = 1;
  for (BigInt i = 2; i <= x; ++i) {
    ++level;
    const HyperValue next = ack(k - 1, cur.value, opt);
    if (next.saturated) return saturated_at(level);
    if (next.value == cur.value) break;  // fixed point: every later level repeats it
    cur.value = next.value;
  }
  return cur;
}

HyperValue tower(const BigInt& x, const AckOptions& opt) { return ack(2, x, opt); }

HyperValue wowzer(const BigInt& x, WowzerConvention c, const AckOptions& opt) {
  if (c == WowzerConvention::Ack3) return ack(3, x, opt);
  if (x < 1) throw DomainError("W(x) needs x >= 1");
  HyperValue cur;
  cur.value = 1;
  std::size_t level = 1;
  for (BigInt i = 2; i <= x; ++i) {
    ++level;
    const HyperValue next = tower(cur.value, opt);
    if (next.saturated) return saturated_at(level);
    if (next.value == cur.value) break;
    cur.value = next.value;
  }
  return cur;
}

ThreeGraph tripartite_completion(std::size_t a, std::size_t b, std::size_t c, const std::vector<Triple>& edges,
                                 const FillPolicy& fill) {
  const std::size_t n = a + b + c;
  auto side = [&](std::size_t v) { return v < a ? 0 : (v < a + b ? 1 : 2); };
  ThreeGraph h(n);
  for (const auto& e : edges) {
    for (std::size_t v : e)
      if (v >= n) throw DomainError("triple vertex out of range");
    const int s0 = side(e[0]), s1 = side(e[1]), s2 = side(e[2]);
    if (s0 == s1 || s0 == s2 || s1 == s2) throw DomainError("triple is not crossing");
    h.add_edge(e[0], e[1], e[2]);
  }
  fill_non_crossing(h, a, b, fill);
  return h;
}

Decomposition split_colors(const Decomposition& p, std::size_t factor, std::uint64_t seed) {
  if (factor < 1) throw DomainError("split factor must be at least 1");
  if (p.ell() * factor > Decomposition::kMaxColors) throw DomainError("split exceeds 256 colors");
  const std::size_t n = p.n(), t = p.t();
  Rng rng(seed);
  std::vector<std::uint8_t> part(n * n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y) part[x * n + y] = part[y * n + x] = static_cast<std::uint8_t>(rng.below(factor));
  std::vector<std::vector<Color>> tables(t * t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      auto& dst = tables[i * t + j];
      for (std::size_t x : p.block(i))
        for (std::size_t y : p.block(j))
          dst.push_back(static_cast<Color>(p.color_of(x, y) * factor + part[x * n + y]));
    }
  return Decomposition(n, p.blocks(), p.ell() * factor, std::move(tables));
}

}  // namespace hyperreg
