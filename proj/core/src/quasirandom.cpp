#include "hyperreg/quasirandom.hpp"

#include "hyperreg/errors.hpp"
#include "hyperreg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyperreg {

namespace {

using i128 = __int128;

struct Kahan {
  double sum = 0;
  double carry = 0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

double sum_in_order(const std::vector<double>& parts) {
  Kahan k;
  for (double p : parts) k.add(p);
  return k.sum;
}

i128 sum_in_order(const std::vector<i128>& parts) {
  i128 s = 0;
  for (i128 p : parts) s += p;
  return s;
}

bool eps_at_least(const std::optional<Rational>& exact, double approx, double eps) {
  if (exact) return *exact <= Rational(eps);
  return approx <= eps;
}

Rational pow_int(const Rational& r, unsigned k) {
  Rational out = 1;
  for (unsigned i = 0; i < k; ++i) out *= r;
  return out;
}

}  // namespace

bool Dev2Report::passes(double eps) const { return passes(eps, reference_density ? *reference_density : density); }

bool Dev2Report::passes(double eps, const Rational& d) const {
  const Rational gap = density > d ? Rational(density - d) : Rational(d - density);
  if (gap > Rational(eps)) return false;
  return eps_at_least(exact_normalized, normalized_sum, eps);
}

Dev2Report dev2(const Bigraph& b, Arithmetic mode, std::optional<Rational> reference) {
  if (b.u_size() == 0 || b.v_size() == 0) throw DomainError("dev2 requires nonempty sides");
  if (mode == Arithmetic::Exact && (b.u_size() > kDev2ExactLimit || b.v_size() > kDev2ExactLimit))
    throw SizeError("exact dev2 is limited to 64 vertices per side");

  Dev2Report r;
  r.u_size = b.u_size();
  r.v_size = b.v_size();
  r.edges = b.edge_count();
  r.density = make_rational(r.edges, r.u_size * r.v_size);
  r.reference_density = std::move(reference);

  // Pair the rows of the smaller side; the sum is invariant under transposition.
  Bigraph transposed;
  const Bigraph* rows = &b;
  if (b.u_size() > b.v_size()) {
    transposed = b.transposed();
    rows = &transposed;
  }
  const std::size_t m = rows->u_size();
  const std::size_t w = rows->v_size();
  const i128 total = static_cast<i128>(r.u_size) * static_cast<i128>(r.v_size);
  const i128 e = static_cast<i128>(r.edges);
  const i128 ga = total - e;  // scaled g on an edge
  const i128 gb = -e;         // scaled g on a non-edge

  std::vector<std::size_t> deg(m);
  for (std::size_t i = 0; i < m; ++i) deg[i] = rows->degree(i);

  auto scaled_inner = [&](std::size_t i, std::size_t j) -> i128 {
    const i128 c11 = static_cast<i128>(popcount_and(rows->row(i), rows->row(j)));
    const i128 c10 = static_cast<i128>(deg[i]) - c11;
    const i128 c01 = static_cast<i128>(deg[j]) - c11;
    const i128 c00 = static_cast<i128>(w) - c11 - c10 - c01;
    return c11 * ga * ga + (c10 + c01) * ga * gb + c00 * gb * gb;
  };

  const long long mm = static_cast<long long>(m);
  const double tt = static_cast<double>(total) * static_cast<double>(total);
  const double side2 = static_cast<double>(r.u_size) * r.u_size * static_cast<double>(r.v_size) * r.v_size;

  if (mode == Arithmetic::Exact) {
    std::vector<i128> parts(m, 0);
#pragma omp parallel for schedule(dynamic)
    for (long long ii = 0; ii < mm; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      i128 acc = 0;
      for (std::size_t j = i; j < m; ++j) {
        const i128 s = scaled_inner(i, j);
        acc += (j == i ? 1 : 2) * s * s;
      }
      parts[i] = acc;
    }
    const BigInt sum = to_bigint(sum_in_order(parts));
    BigInt t6 = BigInt(to_bigint(total));
    t6 = t6 * t6 * t6 * t6 * t6 * t6;
    r.exact_normalized = Rational(sum, t6);
    r.normalized_sum = to_double(*r.exact_normalized);
    r.raw_sum = r.normalized_sum * side2;
    return r;
  }

  std::vector<double> parts(m, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (long long ii = 0; ii < mm; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    Kahan acc;
    for (std::size_t j = i; j < m; ++j) {
      const double s = static_cast<double>(scaled_inner(i, j)) / tt;
      acc.add((j == i ? 1.0 : 2.0) * s * s);
    }
    parts[i] = acc.sum;
  }
  r.raw_sum = sum_in_order(parts);
  r.normalized_sum = r.raw_sum / side2;
  return r;
}

namespace {

struct OctahedralResult {
  std::size_t triangles = 0;
  std::size_t in_relation = 0;
  double value = 0;
  std::optional<Rational> exact;
};

OctahedralResult octahedral(const Trigraph& h, const Triad& g, Arithmetic mode) {
  if (h.x_size() != g.x_size() || h.y_size() != g.y_size() || h.z_size() != g.z_size())
    throw DomainError("trigraph and triad shapes differ");
  const std::array<std::size_t, 3> size{g.x_size(), g.y_size(), g.z_size()};
  if (mode == Arithmetic::Exact && *std::max_element(size.begin(), size.end()) > kDev23ExactLimit)
    throw SizeError("exact dev23 is limited to 16 vertices per class");

  OctahedralResult out;
  const auto counts = relative_counts(h, g);
  out.triangles = counts.triangles;
  out.in_relation = counts.in_relation;
  if (mode == Arithmetic::Exact) out.exact = Rational(0);
  if (counts.in_relation == 0 || counts.in_relation == counts.triangles) return out;

  // The bitset axis w is the largest class; u and z are the remaining two.
  std::size_t wa = 2;
  for (std::size_t a = 0; a < 3; ++a)
    if (size[a] > size[wa]) wa = a;
  std::array<std::size_t, 2> rest{};
  for (std::size_t a = 0, k = 0; a < 3; ++a)
    if (a != wa) rest[k++] = a;
  const std::size_t ua = rest[0], za = rest[1];
  const std::size_t nu = size[ua], nw = size[wa], nz = size[za];
  const std::size_t wpr = words_for(nw);

  // P: triangles in H, Q: triangles outside H; one w-bitset per (u, z).
  std::vector<Word> pbits(nu * nz * wpr, 0), qbits(nu * nz * wpr, 0);
  for (std::size_t x = 0; x < size[0]; ++x)
    for (std::size_t y = 0; y < size[1]; ++y) {
      if (!g.xy().has_edge(x, y)) continue;
      const auto fiber = g.triangle_fiber(x, y);
      const auto rel = h.fiber(x, y);
      for (std::size_t wi = 0; wi < fiber.size(); ++wi)
        for (Word word = fiber[wi]; word; word &= word - 1) {
          const std::size_t z = wi * kWordBits + static_cast<std::size_t>(std::countr_zero(word));
          const std::array<std::size_t, 3> c{x, y, z};
          const std::size_t at = (c[ua] * nz + c[za]) * wpr + c[wa] / kWordBits;
          const Word bit = Word{1} << (c[wa] % kWordBits);
          if ((rel[wi] >> (z % kWordBits)) & 1U)
            pbits[at] |= bit;
          else
            qbits[at] |= bit;
        }
    }

  const i128 k = static_cast<i128>(counts.triangles);
  const i128 rr = static_cast<i128>(counts.in_relation);
  const bool integral = mode == Arithmetic::Exact || counts.triangles <= (std::size_t{1} << 23);
  const i128 ia = k - rr, ib = -rr;
  const std::array<i128, 3> iv{ia * ia, ia * ib, ib * ib};
  const double d = static_cast<double>(counts.in_relation) / static_cast<double>(counts.triangles);
  const double fa = 1.0 - d, fb = -d;
  const std::array<double, 3> fv{fa * fa, fa * fb, fb * fb};
  const double k4 = std::pow(static_cast<double>(counts.triangles), 4);

  std::vector<double> fparts(nz, 0.0);
  std::vector<i128> iparts(nz, 0);
  const long long nzz = static_cast<long long>(nz);

#pragma omp parallel for schedule(dynamic)
  for (long long zz0 = 0; zz0 < nzz; ++zz0) {
    const auto z0 = static_cast<std::size_t>(zz0);
    std::vector<Word> masks(nu * 3 * wpr);
    Kahan facc;
    i128 iacc = 0;
    for (std::size_t z1 = z0; z1 < nz; ++z1) {
      for (std::size_t u = 0; u < nu; ++u) {
        const Word* p0 = &pbits[(u * nz + z0) * wpr];
        const Word* q0 = &qbits[(u * nz + z0) * wpr];
        const Word* p1 = &pbits[(u * nz + z1) * wpr];
        const Word* q1 = &qbits[(u * nz + z1) * wpr];
        Word* m = &masks[u * 3 * wpr];
        for (std::size_t i = 0; i < wpr; ++i) {
          m[i] = p0[i] & p1[i];
          m[wpr + i] = (p0[i] & q1[i]) | (q0[i] & p1[i]);
          m[2 * wpr + i] = q0[i] & q1[i];
        }
      }
      Kahan ft;
      i128 it = 0;
      for (std::size_t u0 = 0; u0 < nu; ++u0)
        for (std::size_t u1 = u0; u1 < nu; ++u1) {
          std::array<std::size_t, 9> cnt{};
          for (std::size_t c = 0; c < 3; ++c)
            for (std::size_t c2 = 0; c2 < 3; ++c2)
              cnt[c * 3 + c2] = popcount_and({&masks[(u0 * 3 + c) * wpr], wpr}, {&masks[(u1 * 3 + c2) * wpr], wpr});
          const int mult = u0 == u1 ? 1 : 2;
          if (integral) {
            i128 s = 0;
            for (std::size_t c = 0; c < 3; ++c)
              for (std::size_t c2 = 0; c2 < 3; ++c2) s += iv[c] * iv[c2] * static_cast<i128>(cnt[c * 3 + c2]);
            if (mode == Arithmetic::Exact) {
              it += mult * s * s;
            } else {
              const double sf = static_cast<double>(s) / k4;
              ft.add(mult * sf * sf);
            }
          } else {
            double s = 0;
            for (std::size_t c = 0; c < 3; ++c)
              for (std::size_t c2 = 0; c2 < 3; ++c2) s += fv[c] * fv[c2] * static_cast<double>(cnt[c * 3 + c2]);
            ft.add(mult * s * s);
          }
        }
      const int zmult = z0 == z1 ? 1 : 2;
      facc.add(zmult * ft.sum);
      iacc += zmult * it;
    }
    fparts[z0] = facc.sum;
    iparts[z0] = iacc;
  }

  if (mode == Arithmetic::Exact) {
    BigInt k8 = to_bigint(k);
    k8 = k8 * k8;
    k8 = k8 * k8;
    k8 = k8 * k8;
    out.exact = Rational(to_bigint(sum_in_order(iparts)), k8);
    out.value = to_double(*out.exact);
  } else {
    out.value = sum_in_order(fparts);
  }
  return out;
}

}  // namespace

double octahedral_sum(const Trigraph& h, const Triad& g) { return octahedral(h, g, Arithmetic::Float).value; }

bool Dev23Report::passes(double eps1, double eps2) const {
  for (const auto& c : components)
    if (!c.passes(eps2, c.density)) return false;
  return eps_at_least(exact_normalized, normalized, eps1);
}

bool Dev23Report::passes(double eps1, double eps2, const std::array<Rational, 3>& declared) const {
  for (std::size_t i = 0; i < 3; ++i)
    if (!components[i].passes(eps2, declared[i])) return false;
  return eps_at_least(exact_normalized, normalized, eps1);
}

Dev23Report dev23(const Trigraph& h, const Triad& g, Arithmetic mode, const std::array<Dev2Report, 3>* components) {
  if (g.x_size() == 0 || g.y_size() == 0 || g.z_size() == 0) throw DomainError("dev23 requires nonempty classes");
  Dev23Report r;
  const auto oct = octahedral(h, g, mode);
  if (components) {
    r.components = *components;
  } else {
    r.components = {dev2(g.xy(), mode), dev2(g.xz(), mode), dev2(g.yz(), mode)};
  }
  r.d_xy = r.components[0].density;
  r.d_xz = r.components[1].density;
  r.d_yz = r.components[2].density;
  r.triangles = oct.triangles;
  r.in_relation = oct.in_relation;
  r.relative_density = oct.triangles == 0 ? Rational(0) : make_rational(oct.in_relation, oct.triangles);
  r.octahedral_sum = oct.value;
  r.exact_octahedral = oct.exact;
  r.degenerate = r.d_xy == 0 || r.d_xz == 0 || r.d_yz == 0;
  if (r.degenerate) {
    r.normalized = 0;
    if (oct.exact) r.exact_normalized = Rational(0);
    return r;
  }
  const double sx = static_cast<double>(g.x_size()), sy = static_cast<double>(g.y_size()),
               sz = static_cast<double>(g.z_size());
  const Rational dprod = r.d_xy * r.d_xz * r.d_yz;
  if (oct.exact) {
    const Rational vol = make_rational(g.x_size() * g.y_size() * g.z_size(), 1);
    r.exact_normalized = *oct.exact / (pow_int(dprod, 4) * vol * vol);
    r.normalized = to_double(*r.exact_normalized);
  } else {
    const double dp = to_double(dprod);
    r.normalized = oct.value / (std::pow(dp, 4) * sx * sx * sy * sy * sz * sz);
  }
  return r;
}

double CountingResidual::bound(double eps) const { return 4.0 * std::pow(eps, 0.25) * volume; }

bool CountingResidual::within(double eps) const { return to_double(residual) <= bound(eps); }

CountingResidual counting_residual(const Triad& g, const Rational& d_ab, const Rational& d_bc, const Rational& d_ac) {
  CountingResidual r;
  r.triangles = triangle_count(g);
  const std::size_t vol = g.x_size() * g.y_size() * g.z_size();
  r.volume = static_cast<double>(vol);
  r.expected = d_ab * d_bc * d_ac * make_rational(vol, 1);
  const Rational diff = make_rational(r.triangles, 1) - r.expected;
  r.residual = diff < 0 ? Rational(-diff) : diff;
  return r;
}

double SubtriadDeviation::bound(double eps1) const { return std::pow(2.0 * eps1, 0.125) * scale; }

bool SubtriadDeviation::within(double eps1) const { return to_double(lhs) <= bound(eps1); }

namespace {

void check_sublist(const Subset& s, std::size_t bound, std::size_t expected, const char* what) {
  if (s.size() != expected) throw DomainError(std::string(what) + " list does not match sub-triad size");
  std::vector<bool> seen(bound, false);
  for (std::size_t v : s) {
    if (v >= bound) throw DomainError(std::string(what) + " index out of range");
    if (seen[v]) throw DomainError(std::string(what) + " list repeats a vertex");
    seen[v] = true;
  }
}

void check_subgraph(const Bigraph& sub, const Bigraph& parent, const Subset& rows, const Subset& cols) {
  for (std::size_t a = 0; a < sub.u_size(); ++a)
    for (std::size_t b = 0; b < sub.v_size(); ++b)
      if (sub.has_edge(a, b) && !parent.has_edge(rows[a], cols[b])) throw DomainError("not a sub-triad: extra edge");
}

}  // namespace

SubtriadDeviation subtriad_deviation(const Trigraph& h, const Triad& g, const Triad& gsub, const Subset& xs,
                                     const Subset& ys, const Subset& zs) {
  check_sublist(xs, g.x_size(), gsub.x_size(), "x");
  check_sublist(ys, g.y_size(), gsub.y_size(), "y");
  check_sublist(zs, g.z_size(), gsub.z_size(), "z");
  check_subgraph(gsub.xy(), g.xy(), xs, ys);
  check_subgraph(gsub.xz(), g.xz(), xs, zs);
  check_subgraph(gsub.yz(), g.yz(), ys, zs);

  SubtriadDeviation r;
  r.relative_density = relative_density(h, g);
  const auto counts = relative_counts(h.sub(xs, ys, zs), gsub);
  r.sub_triangles = counts.triangles;
  r.sub_in_relation = counts.in_relation;
  const Rational diff = make_rational(counts.in_relation, 1) - r.relative_density * make_rational(counts.triangles, 1);
  r.lhs = diff < 0 ? Rational(-diff) : diff;
  if (g.x_size() && g.y_size() && g.z_size()) {
    const Rational dprod = g.xy().density() * g.xz().density() * g.yz().density();
    r.scale = to_double(dprod) * static_cast<double>(g.x_size() * g.y_size() * g.z_size());
  }
  return r;
}

namespace {

std::size_t min_part(double eps, std::size_t n) {
  const double v = std::ceil(eps * static_cast<double>(n) - 1e-12);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::max(0.0, v)));
}

bool violates(std::size_t sub_edges, std::size_t a, std::size_t b, std::size_t edges, std::size_t total, double eps) {
  const double lhs = std::abs(static_cast<double>(sub_edges) * static_cast<double>(total) -
                              static_cast<double>(edges) * static_cast<double>(a * b));
  return lhs > eps * static_cast<double>(a * b) * static_cast<double>(total);
}

Subset mask_members(std::uint32_t mask) {
  Subset s;
  for (std::size_t i = 0; mask; ++i, mask >>= 1)
    if (mask & 1U) s.push_back(i);
  return s;
}

}  // namespace

RegularityResult eps_regular(const Bigraph& b, double eps, RegularityMode mode, std::size_t trials, std::uint64_t seed) {
  if (b.u_size() == 0 || b.v_size() == 0) throw DomainError("eps_regular requires nonempty sides");
  RegularityResult out;
  const std::size_t nu = b.u_size(), nv = b.v_size();
  const std::size_t edges = b.edge_count(), total = nu * nv;
  const std::size_t ra = min_part(eps, nu), rb = min_part(eps, nv);

  if (mode == RegularityMode::Certificate) {
    out.verdict = RegularityVerdict::Dev2Certified;
    out.level = dev2(b).normalized_sum;
    return out;
  }

  if (mode == RegularityMode::Exhaustive) {
    if (nu > kRegularityExhaustiveLimit || nv > kRegularityExhaustiveLimit)
      throw SizeError("exhaustive regularity check is limited to 12 vertices per side");
    std::vector<std::uint32_t> rowmask(nu, 0);
    for (std::size_t u = 0; u < nu; ++u) rowmask[u] = static_cast<std::uint32_t>(b.row(u)[0]);
    const std::uint32_t ufull = 1U << nu, vfull = 1U << nv;
    std::vector<std::size_t> sums(ufull, 0), cnt(nu, 0);
    for (std::uint32_t bm = 1; bm < vfull; ++bm) {
      const auto bsz = static_cast<std::size_t>(std::popcount(bm));
      if (bsz < rb) continue;
      for (std::size_t u = 0; u < nu; ++u) cnt[u] = static_cast<std::size_t>(std::popcount(rowmask[u] & bm));
      for (std::uint32_t am = 1; am < ufull; ++am) {
        sums[am] = sums[am & (am - 1)] + cnt[static_cast<std::size_t>(std::countr_zero(am))];
        const auto asz = static_cast<std::size_t>(std::popcount(am));
        ++out.trials;
        if (asz < ra) continue;
        if (violates(sums[am], asz, bsz, edges, total, eps)) {
          out.verdict = RegularityVerdict::ExactFail;
          out.witness = RegularityWitness{mask_members(am), mask_members(bm), make_rational(sums[am], asz * bsz)};
          return out;
        }
      }
    }
    out.verdict = RegularityVerdict::ExactPass;
    return out;
  }

  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t sa = ra + rng.below(nu - std::min(ra, nu) + 1);
    const std::size_t sb = rb + rng.below(nv - std::min(rb, nv) + 1);
    if (sa > nu || sb > nv) break;
    Subset rows = rng.sample(nu, sa);
    Subset cols = rng.sample(nv, sb);
    const std::size_t sub_edges = b.restricted(rows, cols).edge_count();
    ++out.trials;
    if (violates(sub_edges, sa, sb, edges, total, eps)) {
      out.verdict = RegularityVerdict::ExactFail;
      out.witness = RegularityWitness{std::move(rows), std::move(cols), make_rational(sub_edges, sa * sb)};
      return out;
    }
  }
  out.verdict = RegularityVerdict::SampledNoCounterexample;
  return out;
}

Rational neighborhood_stat(const Triad& g, double eps) {
  const std::size_t exy = g.xy().edge_count();
  if (exy == 0) throw DomainError("no edges");
  double target = 0;
  if (g.z_size() > 0)
    target = to_double(g.xz().density() * g.yz().density()) * static_cast<double>(g.z_size());
  const double slack = std::pow(eps, 0.01);
  const double lo = (1.0 - slack) * target, hi = (1.0 + slack) * target;
  std::size_t good = 0;
  for (std::size_t x = 0; x < g.x_size(); ++x)
    for (std::size_t y = 0; y < g.y_size(); ++y) {
      if (!g.xy().has_edge(x, y)) continue;
      const auto c = static_cast<double>(popcount_and(g.xz().row(x), g.yz().row(y)));
      if (c >= lo && c <= hi) ++good;
    }
  return make_rational(good, exy);
}

UnionReport union_colors(const Bigraph& b1, const Bigraph& b2) {
  if (b1.u_size() != b2.u_size() || b1.v_size() != b2.v_size()) throw DomainError("union of differently shaped bigraphs");
  BitMatrix m = b1.matrix();
  for (std::size_t u = 0; u < b1.u_size(); ++u) {
    if (popcount_and(b1.row(u), b2.row(u)) != 0) throw DomainError("color classes overlap");
    auto dst = m.row(u);
    auto src = b2.row(u);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
  }
  UnionReport r;
  r.graph = Bigraph(std::move(m));
  r.first = dev2(b1);
  r.second = dev2(b2);
  r.predicted_eps = std::pow(r.first.normalized_sum, 1.0 / 12) + std::pow(r.second.normalized_sum, 1.0 / 12);
  r.predicted_density = r.first.density + r.second.density;
  r.merged = dev2(r.graph, Arithmetic::Float, r.predicted_density);
  r.prediction_holds = r.merged.passes(r.predicted_eps, r.predicted_density);
  return r;
}

SubpairReport subpair(const Bigraph& b, const Subset& rows, const Subset& cols, double gamma) {
  if (!(gamma > 0 && gamma <= 1)) throw DomainError("gamma must lie in (0, 1]");
  check_sublist(rows, b.u_size(), rows.size(), "row");
  check_sublist(cols, b.v_size(), cols.size(), "column");
  const double tol = 1e-12;
  if (rows.empty() || static_cast<double>(rows.size()) < gamma * static_cast<double>(b.u_size()) - tol)
    throw DomainError("row subset smaller than gamma|U|");
  if (cols.empty() || static_cast<double>(cols.size()) < gamma * static_cast<double>(b.v_size()) - tol)
    throw DomainError("column subset smaller than gamma|V|");
  SubpairReport r;
  r.graph = b.restricted(rows, cols);
  r.parent = dev2(b);
  r.predicted_eps = 2.0 / gamma * std::pow(r.parent.normalized_sum, 1.0 / 12);
  r.predicted_density = r.parent.density;
  r.restricted = dev2(r.graph, Arithmetic::Float, r.predicted_density);
  r.prediction_holds = r.restricted.passes(r.predicted_eps, r.predicted_density);
  return r;
}

}  // namespace hyperreg
