#include "hyperreg/structure.hpp"

#include "hyperreg/errors.hpp"

#include <bit>
#include <cmath>
#include <map>

namespace hyperreg {

EmbeddingSearch find_e0e1_copy(const EdgeColoredBigraph& g, const Bigraph& pattern, std::size_t budget) {
  const PairPredicate fits = [&](std::size_t u, std::size_t v, bool edge) {
    return g.color(u, v) == (edge ? kE1 : kE0);
  };
  return find_pattern(g.u_size(), g.v_size(), pattern, fits, MatchOptions{true, true, budget});
}

namespace {

std::size_t symdiff(const std::vector<Word>& a, const std::vector<Word>& b) {
  std::size_t n = 0;
  for (std::size_t w = 0; w < a.size(); ++w) n += static_cast<std::size_t>(std::popcount(a[w] ^ b[w]));
  return n;
}

std::size_t count(const std::vector<Word>& a) {
  std::size_t n = 0;
  for (Word w : a) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

struct Profile {
  std::vector<Word> e0, e1;
};

bool close(const Profile& a, const Profile& b, double limit) {
  return static_cast<double>(symdiff(a.e1, b.e1)) <= limit && static_cast<double>(symdiff(a.e0, b.e0)) <= limit;
}

}  // namespace

ClusterResult haussler_cluster(const EdgeColoredBigraph& g, double delta, double eps) {
  if (g.num_colors() != 3) throw DomainError("clustering needs a three-colored bigraph");
  if (!(delta > 0 && delta <= 1) || !(eps > 0 && eps <= 1)) throw DomainError("δ and ε must lie in (0,1]");
  ClusterResult r;
  r.delta = delta;
  r.eps = eps;
  const double nv = static_cast<double>(g.v_size());
  const double e2_limit = std::sqrt(eps) * nv;
  const double limit = delta * nv;
  std::vector<Profile> rep_profiles;
  for (std::size_t u = 0; u < g.u_size(); ++u) {
    if (static_cast<double>(count(g.neighborhood(u, kE2))) > e2_limit) {
      r.u0.push_back(u);
      continue;
    }
    Profile pu{g.neighborhood(u, kE0), g.neighborhood(u, kE1)};
    std::size_t i = 0;
    while (i < rep_profiles.size() && !close(pu, rep_profiles[i], limit)) ++i;
    if (i == rep_profiles.size()) {
      r.reps.push_back(u);
      r.clusters.emplace_back();
      rep_profiles.push_back(std::move(pu));
    }
    r.clusters[i].push_back(u);
  }
  return r;
}

bool validate(const EdgeColoredBigraph& g, const ClusterResult& r) {
  if (g.num_colors() != 3 || r.reps.size() != r.clusters.size()) return false;
  const double nv = static_cast<double>(g.v_size());
  const double limit = r.delta * nv;
  std::vector<int> seen(g.u_size(), 0);
  for (std::size_t u : r.u0) {
    if (u >= g.u_size()) return false;
    ++seen[u];
    std::size_t e2 = 0;
    for (std::size_t v = 0; v < g.v_size(); ++v) e2 += g.color(u, v) == kE2;
    if (!(static_cast<double>(e2) > std::sqrt(r.eps) * nv)) return false;
  }
  auto sd = [&](std::size_t a, std::size_t b, std::uint8_t c) {
    std::size_t n = 0;
    for (std::size_t v = 0; v < g.v_size(); ++v) n += (g.color(a, v) == c) != (g.color(b, v) == c);
    return static_cast<double>(n);
  };
  auto near = [&](std::size_t a, std::size_t b) { return sd(a, b, kE1) <= limit && sd(a, b, kE0) <= limit; };
  for (std::size_t i = 0; i < r.clusters.size(); ++i) {
    if (r.clusters[i].empty() || r.clusters[i].front() != r.reps[i]) return false;
    for (std::size_t u : r.clusters[i]) {
      if (u >= g.u_size()) return false;
      ++seen[u];
      std::size_t e2 = 0;
      for (std::size_t v = 0; v < g.v_size(); ++v) e2 += g.color(u, v) == kE2;
      if (static_cast<double>(e2) > std::sqrt(r.eps) * nv) return false;
      if (!near(u, r.reps[i])) return false;
      for (std::size_t e = 0; e < i; ++e)
        if (r.reps[e] < u && near(u, r.reps[e])) return false;
    }
  }
  for (int s : seen)
    if (s != 1) return false;
  return true;
}

namespace {

void check_params(const CornerParams& c) {
  if (!(0 <= c.lo && c.lo <= c.hi && c.hi <= 1)) throw DomainError("thresholds must satisfy 0 <= lo <= hi <= 1");
  if (!(c.eps2 >= 0)) throw DomainError("ε₂ must be non-negative");
  if (c.eps1 && !(*c.eps1 >= 0)) throw DomainError("ε₁ must be non-negative");
}

void check_over(const ThreeGraph& h, const Decomposition& p) {
  if (h.n() != p.n()) throw DomainError("decomposition is not over V(H)");
}

struct CornerContext {
  const Decomposition& p;
  const CornerParams& params;
  TriadTable table;
  ClassTable classes;
  std::map<TriadRef, bool> regular;

  CornerContext(const ThreeGraph& h, const Decomposition& dec, const CornerParams& prm)
      : p(dec), params(prm), table(dec, &h), classes(dec, prm.eps2) {
    if (prm.eps1) {
      const auto a = audit(h, dec, *prm.eps1, prm.eps2);
      for (const auto& row : a.triads) regular.emplace(row.ref, row.regular);
    }
  }

  bool passing(std::size_t i, std::size_t j, std::size_t alpha) const {
    const auto& row = classes.at(i, j, alpha);
    return row.size > 0 && (params.equitable ? row.passes_equitable : row.passes);
  }

  CornerGraph build(std::size_t j, std::size_t k) const {
    CornerGraph cg;
    cg.j = j;
    cg.k = k;
    const std::size_t ell = p.ell();
    for (std::size_t a = 0; a < ell; ++a)
      if (passing(j, k, a)) cg.edge_vertices.push_back(a);
    for (std::size_t s = 0; s < p.t(); ++s) {
      if (s == j || s == k) continue;
      for (std::size_t b = 0; b < ell; ++b) {
        if (!passing(j, s, b)) continue;
        for (std::size_t c = 0; c < ell; ++c)
          if (passing(k, s, c)) cg.corner_vertices.push_back({s, b, c});
      }
    }
    const std::size_t rows = cg.edge_vertices.size(), cols = cg.corner_vertices.size();
    cg.colors = EdgeColoredBigraph(rows, cols, 3, kE0);
    cg.density.assign(rows * cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        const TriadRef ref = cg.triad(r, c);
        const std::size_t q = table.index(ref);
        const double d = to_double(table.density(q));
        cg.density[r * cols + c] = d;
        std::uint8_t color = d >= params.hi ? kE1 : (d <= params.lo ? kE0 : kE2);
        if (params.eps1) {
          auto it = regular.find(ref);
          if (it == regular.end() || !it->second) color = kE2;
        }
        cg.colors.set_color(r, c, color);
      }
    return cg;
  }
};

}  // namespace

CornerGraph corner_graph(const ThreeGraph& h, const Decomposition& p, std::size_t j, std::size_t k,
                         const CornerParams& params) {
  check_params(params);
  check_over(h, p);
  if (j >= p.t() || k >= p.t() || j == k) throw DomainError("corner graph needs two distinct blocks");
  return CornerContext(h, p, params).build(j, k);
}

std::vector<CornerGraph> corner_graphs(const ThreeGraph& h, const Decomposition& p, const CornerParams& params) {
  check_params(params);
  check_over(h, p);
  CornerContext ctx(h, p, params);
  std::vector<CornerGraph> out;
  for (std::size_t j = 0; j < p.t(); ++j)
    for (std::size_t k = 0; k < p.t(); ++k)
      if (j != k) out.push_back(ctx.build(j, k));
  return out;
}

EncodingSearch find_encoding(const Bigraph& pattern, const ThreeGraph& h, const Decomposition& p,
                             const CornerParams& params, std::size_t budget) {
  EncodingSearch out;
  bool incomplete = false;
  for (const auto& cg : corner_graphs(h, p, params)) {
    const auto s = find_pattern(cg.edge_vertices.size(), cg.corner_vertices.size(), pattern,
                                [&](std::size_t u, std::size_t v, bool edge) {
                                  return cg.colors.color(u, v) == (edge ? kE1 : kE0);
                                },
                                MatchOptions{false, false, budget});
    if (s.outcome == SearchOutcome::Unknown) incomplete = true;
    if (s.outcome != SearchOutcome::Found) continue;
    Encoding e{cg.j, cg.k, {}, {}};
    for (std::size_t r : s.embedding->row_map) e.f.push_back(cg.edge_vertices[r]);
    for (std::size_t c : s.embedding->col_map) e.g.push_back(cg.corner_vertices[c]);
    out.outcome = SearchOutcome::Found;
    out.encoding = std::move(e);
    return out;
  }
  out.outcome = incomplete ? SearchOutcome::Unknown : SearchOutcome::Absent;
  return out;
}

bool verify_encoding(const Bigraph& pattern, const ThreeGraph& h, const Decomposition& p, const CornerParams& params,
                     const Encoding& e) {
  if (h.n() != p.n() || e.f.size() != pattern.u_size() || e.g.size() != pattern.v_size()) return false;
  if (e.j0 >= p.t() || e.k0 >= p.t() || e.j0 == e.k0) return false;
  const ClassTable classes(p, params.eps2);
  auto passing = [&](std::size_t i, std::size_t j, std::size_t a) {
    if (a >= p.ell()) return false;
    const auto& row = classes.at(i, j, a);
    return row.size > 0 && (params.equitable ? row.passes_equitable : row.passes);
  };
  for (std::size_t a : e.f)
    if (!passing(e.j0, e.k0, a)) return false;
  for (const auto& c : e.g)
    if (c.apex >= p.t() || c.apex == e.j0 || c.apex == e.k0 || !passing(e.j0, c.apex, c.beta) ||
        !passing(e.k0, c.apex, c.gamma))
      return false;
  std::optional<DecompositionAudit> a;
  if (params.eps1) a = audit(h, p, *params.eps1, params.eps2);
  for (std::size_t u = 0; u < pattern.u_size(); ++u)
    for (std::size_t v = 0; v < pattern.v_size(); ++v) {
      const TriadRef ref{e.j0, e.k0, e.g[v].apex, e.f[u], e.g[v].beta, e.g[v].gamma};
      const double d = to_double(relative_density(lift_triad(h, p, ref), materialize(p, ref)));
      if (pattern.has_edge(u, v) ? !(d >= params.hi) : !(d <= params.lo && d < params.hi)) return false;
      if (a) {
        bool regular = false;
        for (const auto& row : a->triads)
          if (row.ref == ref) regular = row.regular;
        if (!regular) return false;
      }
    }
  return true;
}

}  // namespace hyperreg
