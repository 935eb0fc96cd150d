#include "hyperreg/dims.hpp"

#include "hyperreg/errors.hpp"
#include "hyperreg/rng.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace hyperreg {

std::string to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Found: return "found";
    case SearchOutcome::Absent: return "absent";
    case SearchOutcome::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

using Bits = std::vector<Word>;

Bits all_vertices(std::size_t n) {
  Bits b(words_for(n), ~Word{0});
  if (n % kWordBits) b.back() = (Word{1} << (n % kWordBits)) - 1;
  if (n == 0) b.clear();
  return b;
}

void clear_bit(Bits& b, std::size_t v) { b[v / kWordBits] &= ~(Word{1} << (v % kWordBits)); }

bool any(const Bits& b) {
  for (Word w : b)
    if (w) return true;
  return false;
}

std::size_t first_bit(const Bits& b) {
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(b[i]));
  return b.size() * kWordBits;
}

/// Splits `allowed` by each neighbourhood in turn; index s of the result has bit i set iff inside N_i.
/// Returns an empty vector as soon as some pattern class is empty.
std::vector<Bits> trace_classes(const Bits& allowed, const std::vector<std::span<const Word>>& nbs) {
  std::vector<Bits> sets{allowed};
  for (std::size_t i = 0; i < nbs.size(); ++i) {
    std::vector<Bits> next(sets.size() * 2);
    for (std::size_t s = 0; s < sets.size(); ++s) {
      Bits in(sets[s].size()), out(sets[s].size());
      for (std::size_t w = 0; w < in.size(); ++w) {
        in[w] = sets[s][w] & nbs[i][w];
        out[w] = sets[s][w] & ~nbs[i][w];
      }
      if (!any(in) || !any(out)) return {};
      next[s] = std::move(out);
      next[s | (std::size_t{1} << i)] = std::move(in);
    }
    sets = std::move(next);
  }
  return sets;
}

std::optional<Vc2Witness> shatters(const ThreeGraph& h, std::size_t k, const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) {
  Bits allowed = all_vertices(h.n());
  for (std::size_t v : a) clear_bit(allowed, v);
  for (std::size_t v : b) clear_bit(allowed, v);
  std::vector<std::span<const Word>> nbs;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) nbs.push_back(h.pair_neighborhood(a[i], b[j]));
  auto sets = trace_classes(allowed, nbs);
  if (sets.empty()) return std::nullopt;
  Vc2Witness w{k, a, b, {}};
  w.c.reserve(sets.size());
  for (const auto& s : sets) w.c.push_back(first_bit(s));
  return w;
}

bool prefix_ok(const ThreeGraph& h, const std::vector<std::size_t>& used,
               const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Bits allowed = all_vertices(h.n());
  for (std::size_t v : used) clear_bit(allowed, v);
  std::vector<std::span<const Word>> nbs;
  for (auto [x, y] : pairs) nbs.push_back(h.pair_neighborhood(x, y));
  return !trace_classes(allowed, nbs).empty();
}

}  // namespace

bool verify(const ThreeGraph& h, const Vc2Witness& w) {
  const std::size_t k = w.k;
  if (k == 0 || w.a.size() != k || w.b.size() != k || w.c.size() != (std::size_t{1} << (k * k))) return false;
  for (std::size_t s = 0; s < w.c.size(); ++s)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t x = w.a[i], y = w.b[j], z = w.c[s];
        if (x >= h.n() || y >= h.n() || z >= h.n() || x == y || x == z || y == z) return false;
        if (h.has_edge(x, y, z) != (((s >> (i * k + j)) & 1U) != 0)) return false;
      }
  return true;
}

Vc2Search vc2_at_least(const ThreeGraph& h, std::size_t k, Vc2Mode mode, std::size_t trials, std::uint64_t seed) {
  if (k == 0) throw DomainError("k must be at least 1");
  Vc2Search out;
  const std::size_t n = h.n();
  const std::size_t need = 2 * k + (std::size_t{1} << (k * k));

  if (mode == Vc2Mode::Exhaustive) {
    if (k > kVc2ExhaustiveMax) throw SizeError("exhaustive VC2 search is limited to k <= 2");
    out.exhaustive = true;
    out.outcome = SearchOutcome::Absent;
    if (n < need) return out;
    if (k == 1) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
          ++out.tuples;
          if (auto w = shatters(h, 1, {a}, {b})) {
            out.outcome = SearchOutcome::Found;
            out.witness = std::move(w);
            return out;
          }
        }
      return out;
    }
    // Permuting indices and swapping the roles of a and b preserve shattering: a1<a2, b1<b2, a1<b1.
    for (std::size_t a1 = 0; a1 < n; ++a1)
      for (std::size_t b1 = a1 + 1; b1 < n; ++b1) {
        if (!prefix_ok(h, {a1, b1}, {{a1, b1}})) continue;
        for (std::size_t a2 = a1 + 1; a2 < n; ++a2) {
          if (a2 == b1) continue;
          if (!prefix_ok(h, {a1, b1, a2}, {{a1, b1}, {a2, b1}})) continue;
          for (std::size_t b2 = b1 + 1; b2 < n; ++b2) {
            if (b2 == a2) continue;
            ++out.tuples;
            if (auto w = shatters(h, 2, {a1, a2}, {b1, b2})) {
              out.outcome = SearchOutcome::Found;
              out.witness = std::move(w);
              return out;
            }
          }
        }
      }
    return out;
  }

  if (k > kVc2RandomizedMax) throw SizeError("randomized VC2 search is limited to k <= 4");
  out.outcome = SearchOutcome::Unknown;
  if (n < need) return out;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto pick = rng.sample(n, 2 * k);
    rng.shuffle(pick);
    std::vector<std::size_t> a(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<std::size_t> b(pick.begin() + static_cast<std::ptrdiff_t>(k), pick.end());
    ++out.tuples;
    if (auto w = shatters(h, k, a, b)) {
      out.outcome = SearchOutcome::Found;
      out.witness = std::move(w);
      return out;
    }
  }
  return out;
}

Vc2Value vc2(const ThreeGraph& h, std::size_t cap, std::size_t trials, std::uint64_t seed) {
  if (cap == 0) throw DomainError("cap must be at least 1");
  Vc2Value v;
  auto search = [&](std::size_t k) {
    return k <= kVc2ExhaustiveMax ? vc2_at_least(h, k, Vc2Mode::Exhaustive)
                                  : vc2_at_least(h, k, Vc2Mode::Randomized, trials, seed);
  };
  for (std::size_t k = 1; k <= cap; ++k) {
    auto s = search(k);
    if (s.outcome != SearchOutcome::Found) {
      v.exact = s.outcome == SearchOutcome::Absent;
      return v;
    }
    v.value = k;
    v.witness = std::move(s.witness);
  }
  if (cap + 1 <= kVc2ExhaustiveMax) v.exact = vc2_at_least(h, cap + 1, Vc2Mode::Exhaustive).outcome == SearchOutcome::Absent;
  return v;
}

Quotient sim_quotient(const Bigraph& g) {
  Quotient q;
  std::map<std::vector<Word>, std::size_t> seen;
  q.row_class.resize(g.u_size());
  for (std::size_t u = 0; u < g.u_size(); ++u) {
    std::vector<Word> key(g.row(u).begin(), g.row(u).end());
    auto [it, fresh] = seen.emplace(std::move(key), q.row_classes.size());
    if (fresh) q.row_classes.emplace_back();
    q.row_class[u] = it->second;
    q.row_classes[it->second].push_back(u);
  }
  const BitMatrix cols = g.columns();
  seen.clear();
  q.col_class.resize(g.v_size());
  for (std::size_t v = 0; v < g.v_size(); ++v) {
    std::vector<Word> key(cols.row(v).begin(), cols.row(v).end());
    auto [it, fresh] = seen.emplace(std::move(key), q.col_classes.size());
    if (fresh) q.col_classes.emplace_back();
    q.col_class[v] = it->second;
    q.col_classes[it->second].push_back(v);
  }
  q.graph = Bigraph(q.row_classes.size(), q.col_classes.size());
  for (std::size_t r = 0; r < q.row_classes.size(); ++r)
    for (std::size_t c = 0; c < q.col_classes.size(); ++c)
      if (g.has_edge(q.row_classes[r][0], q.col_classes[c][0])) q.graph.add_edge(r, c);
  return q;
}

bool is_irreducible(const Bigraph& g) {
  const auto q = sim_quotient(g);
  return q.row_classes.size() == g.u_size() && q.col_classes.size() == g.v_size();
}

std::string to_string(CanonicalKind k) {
  switch (k) {
    case CanonicalKind::H: return "H";
    case CanonicalKind::M: return "M";
    case CanonicalKind::Mbar: return "Mbar";
    case CanonicalKind::Ubg: return "Ubg";
  }
  return "H";
}

std::optional<CanonicalKind> parse_canonical_kind(const std::string& s) {
  std::string l;
  for (char ch : s) l.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (l == "h") return CanonicalKind::H;
  if (l == "m") return CanonicalKind::M;
  if (l == "mbar") return CanonicalKind::Mbar;
  if (l == "ubg") return CanonicalKind::Ubg;
  return std::nullopt;
}

Bigraph canonical(CanonicalKind kind, std::size_t k) {
  if (k == 0) throw DomainError("k must be at least 1");
  switch (kind) {
    case CanonicalKind::Ubg: {
      if (k > kUbgMax) throw SizeError("U_bg(k) is limited to k <= 20");
      const std::size_t rows = std::size_t{1} << k;
      return Bigraph::from_predicate(rows, k, [](std::size_t s, std::size_t i) { return ((s >> i) & 1U) != 0; });
    }
    case CanonicalKind::H:
      if (k > kCanonicalMax) throw SizeError("canonical bigraph too large");
      return Bigraph::from_predicate(k, k, [](std::size_t i, std::size_t j) { return i <= j; });
    case CanonicalKind::M:
      if (k > kCanonicalMax) throw SizeError("canonical bigraph too large");
      return Bigraph::from_predicate(k, k, [](std::size_t i, std::size_t j) { return i == j; });
    case CanonicalKind::Mbar:
      if (k > kCanonicalMax) throw SizeError("canonical bigraph too large");
      return Bigraph::from_predicate(k, k, [](std::size_t i, std::size_t j) { return i != j; });
  }
  throw DomainError("unknown canonical kind");
}

namespace {

bool injective(const std::vector<std::size_t>& m, std::size_t bound) {
  std::vector<bool> seen(bound, false);
  for (std::size_t x : m) {
    if (x >= bound || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

}  // namespace

bool verify_induced(const Bigraph& host, const Bigraph& pattern, const Embedding& e) {
  if (e.row_map.size() != pattern.u_size() || e.col_map.size() != pattern.v_size()) return false;
  if (!injective(e.row_map, host.u_size()) || !injective(e.col_map, host.v_size())) return false;
  for (std::size_t a = 0; a < pattern.u_size(); ++a)
    for (std::size_t b = 0; b < pattern.v_size(); ++b)
      if (host.has_edge(e.row_map[a], e.col_map[b]) != pattern.has_edge(a, b)) return false;
  return true;
}

namespace {

class PatternSearch {
 public:
  PatternSearch(std::size_t host_rows, std::size_t host_cols, const Bigraph& pattern, const PairPredicate& fits,
                const MatchOptions& opt)
      : host_rows_(host_rows), host_cols_(host_cols), pat_(pattern), fits_(fits), opt_(opt) {
    const std::size_t r = pattern.u_size(), c = pattern.v_size();
    for (std::size_t i = 0; i < std::max(r, c); ++i) {
      if (i < r) order_.push_back({true, i});
      if (i < c) order_.push_back({false, i});
    }
    emb_.row_map.assign(r, 0);
    emb_.col_map.assign(c, 0);
    row_set_.assign(r, false);
    col_set_.assign(c, false);
    row_used_.assign(host_rows, false);
    col_used_.assign(host_cols, false);
  }

  EmbeddingSearch run() {
    EmbeddingSearch out;
    if ((opt_.injective_rows && pat_.u_size() > host_rows_) || (opt_.injective_cols && pat_.v_size() > host_cols_) ||
        (pat_.u_size() > 0 && host_rows_ == 0) || (pat_.v_size() > 0 && host_cols_ == 0)) {
      out.outcome = SearchOutcome::Absent;
      return out;
    }
    const bool found = extend(0);
    out.nodes = nodes_;
    if (found) {
      out.outcome = SearchOutcome::Found;
      out.embedding = emb_;
    } else {
      out.outcome = exhausted_ ? SearchOutcome::Unknown : SearchOutcome::Absent;
    }
    return out;
  }

 private:
  struct Step {
    bool row;
    std::size_t index;
  };

  bool consistent_row(std::size_t a, std::size_t hu) const {
    for (std::size_t b = 0; b < pat_.v_size(); ++b)
      if (col_set_[b] && !fits_(hu, emb_.col_map[b], pat_.has_edge(a, b))) return false;
    return true;
  }
  bool consistent_col(std::size_t b, std::size_t hv) const {
    for (std::size_t a = 0; a < pat_.u_size(); ++a)
      if (row_set_[a] && !fits_(emb_.row_map[a], hv, pat_.has_edge(a, b))) return false;
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const Step s = order_[depth];
    const std::size_t limit = s.row ? host_rows_ : host_cols_;
    const bool injective = s.row ? opt_.injective_rows : opt_.injective_cols;
    auto& used = s.row ? row_used_ : col_used_;
    for (std::size_t x = 0; x < limit; ++x) {
      if (injective && used[x]) continue;
      if (s.row ? !consistent_row(s.index, x) : !consistent_col(s.index, x)) continue;
      if (opt_.budget && nodes_ >= opt_.budget) {
        exhausted_ = true;
        return false;
      }
      ++nodes_;
      used[x] = true;
      (s.row ? emb_.row_map : emb_.col_map)[s.index] = x;
      (s.row ? row_set_ : col_set_)[s.index] = true;
      if (extend(depth + 1)) return true;
      used[x] = false;
      (s.row ? row_set_ : col_set_)[s.index] = false;
      if (exhausted_) return false;
    }
    return false;
  }

  std::size_t host_rows_, host_cols_;
  const Bigraph& pat_;
  const PairPredicate& fits_;
  MatchOptions opt_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<Step> order_;
  Embedding emb_;
  std::vector<bool> row_set_, col_set_, row_used_, col_used_;
};

}  // namespace

EmbeddingSearch find_pattern(std::size_t host_rows, std::size_t host_cols, const Bigraph& pattern,
                             const PairPredicate& fits, const MatchOptions& options) {
  return PatternSearch(host_rows, host_cols, pattern, fits, options).run();
}

EmbeddingSearch find_induced(const Bigraph& host, const Bigraph& pattern, std::size_t budget) {
  const PairPredicate fits = [&](std::size_t u, std::size_t v, bool edge) { return host.has_edge(u, v) == edge; };
  return find_pattern(host.u_size(), host.v_size(), pattern, fits, MatchOptions{true, true, budget});
}

CanonicalSearch find_canonical(const Bigraph& g, std::size_t k, std::size_t budget) {
  if (!is_irreducible(g)) throw DomainError("bigraph is not irreducible; quotient it first");
  CanonicalSearch out;
  for (auto kind : {CanonicalKind::H, CanonicalKind::M, CanonicalKind::Mbar}) {
    auto s = find_induced(g, canonical(kind, k), budget);
    if (s.outcome == SearchOutcome::Found) {
      out.hit = CanonicalHit{kind, *s.embedding};
      return out;
    }
    if (s.outcome == SearchOutcome::Unknown) out.exhaustive = false;
  }
  return out;
}

namespace {

void check_gamma(const Bigraph& g, const BipartiteColoredGraph& gamma) {
  if (gamma.num_colors() != g.u_size()) throw DomainError("color index mismatch: Γ must be colored by U(G)");
}

GDimensionVerdict check_embedding(const ThreeGraph& h, const Bigraph& g, const BipartiteColoredGraph& gamma,
                                  const BlowupEmbedding& e) {
  GDimensionVerdict v;
  v.outcome = SearchOutcome::Found;
  for (std::size_t a = 0; a < gamma.a_size(); ++a)
    for (std::size_t b = 0; b < gamma.b_size(); ++b) {
      const std::size_t u = gamma.color(a, b);
      for (std::size_t cv = 0; cv < g.v_size(); ++cv) {
        const bool want = g.has_edge(u, cv);
        for (std::size_t z : e.c[cv])
          if (h.has_edge(e.a[a], e.b[b], z) != want) {
            v.violation = std::array<std::size_t, 3>{e.a[a], e.b[b], z};
            v.expected_edge = want;
            return v;
          }
      }
    }
  v.verified = true;
  v.embedding = e;
  return v;
}

class BlowupSearch {
 public:
  BlowupSearch(const ThreeGraph& h, const Bigraph& g, std::size_t n, const BipartiteColoredGraph& gamma)
      : h_(h), g_(g), n_(n), gamma_(gamma), used_(h.n(), false) {
    e_.a.assign(gamma.a_size(), 0);
    e_.b.assign(gamma.b_size(), 0);
    e_.c.assign(g.v_size(), {});
  }

  bool run() { return place(0); }
  const BlowupEmbedding& embedding() const { return e_; }

 private:
  bool fits(std::size_t cv, std::size_t z) const {
    for (std::size_t a = 0; a < gamma_.a_size(); ++a)
      for (std::size_t b = 0; b < gamma_.b_size(); ++b)
        if (h_.has_edge(e_.a[a], e_.b[b], z) != g_.has_edge(gamma_.color(a, b), cv)) return false;
    return true;
  }

  bool place(std::size_t slot) {
    const std::size_t na = gamma_.a_size(), nb = gamma_.b_size();
    const std::size_t total = na + nb + g_.v_size() * n_;
    if (slot == total) return true;
    std::size_t start = 0;
    std::size_t cv = 0;
    const bool in_c = slot >= na + nb;
    if (in_c) {
      cv = (slot - na - nb) / n_;
      if (!e_.c[cv].empty()) start = e_.c[cv].back() + 1;
    }
    for (std::size_t x = start; x < h_.n(); ++x) {
      if (used_[x]) continue;
      if (in_c && !fits(cv, x)) continue;
      used_[x] = true;
      if (slot < na)
        e_.a[slot] = x;
      else if (slot < na + nb)
        e_.b[slot - na] = x;
      else
        e_.c[cv].push_back(x);
      if (place(slot + 1)) return true;
      if (in_c) e_.c[cv].pop_back();
      used_[x] = false;
    }
    return false;
  }

  const ThreeGraph& h_;
  const Bigraph& g_;
  std::size_t n_;
  const BipartiteColoredGraph& gamma_;
  std::vector<bool> used_;
  BlowupEmbedding e_;
};

}  // namespace

GDimensionVerdict g_dimension_check(const ThreeGraph& h, const Bigraph& g, std::size_t n,
                                    const BipartiteColoredGraph& gamma,
                                    const std::optional<BlowupEmbedding>& embedding) {
  check_gamma(g, gamma);
  if (n == 0) throw DomainError("n must be at least 1");
  if (embedding) {
    const auto& e = *embedding;
    if (e.a.size() != gamma.a_size() || e.b.size() != gamma.b_size() || e.c.size() != g.v_size())
      throw DomainError("embedding shape does not match Γ and G");
    std::vector<std::size_t> all(e.a);
    all.insert(all.end(), e.b.begin(), e.b.end());
    for (const auto& cls : e.c) {
      if (cls.size() != n) throw DomainError("every C_v must have n vertices");
      all.insert(all.end(), cls.begin(), cls.end());
    }
    if (!injective(all, h.n())) throw DomainError("embedding is not injective into V(H)");
    return check_embedding(h, g, gamma, e);
  }
  if (h.n() > kGDimensionExhaustiveMax) throw SizeError("blowup search is limited to 15 vertices");
  GDimensionVerdict v;
  if (gamma.a_size() + gamma.b_size() + g.v_size() * n > h.n()) {
    v.outcome = SearchOutcome::Absent;
    return v;
  }
  BlowupSearch search(h, g, n, gamma);
  if (search.run()) {
    v.verified = true;
    v.outcome = SearchOutcome::Found;
    v.embedding = search.embedding();
  } else {
    v.outcome = SearchOutcome::Absent;
  }
  return v;
}

std::vector<Bigraph> irreducible_bigraphs(std::size_t n) {
  if (n == 0 || n > 4) throw SizeError("Irr(n) enumeration is limited to 1 <= n <= 4");
  const std::size_t masks = std::size_t{1} << n;  // possible columns
  std::vector<std::size_t> perm(n);
  std::vector<std::vector<std::size_t>> perms;
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Bigraph> out;
  const std::size_t families = std::size_t{1} << masks;
  for (std::size_t fam = 0; fam < families; ++fam) {
    std::vector<std::size_t> cols;
    for (std::size_t m = 0; m < masks; ++m)
      if ((fam >> m) & 1U) cols.push_back(m);
    // Rows r and s coincide iff no column separates them.
    bool distinct = true;
    for (std::size_t r = 0; r < n && distinct; ++r)
      for (std::size_t s = r + 1; s < n && distinct; ++s) {
        bool split = false;
        for (std::size_t m : cols) split |= (((m >> r) ^ (m >> s)) & 1U) != 0;
        distinct = split;
      }
    if (!distinct) continue;
    bool minimal = true;
    for (const auto& p : perms) {
      std::size_t image = 0;
      for (std::size_t m : cols) {
        std::size_t pm = 0;
        for (std::size_t r = 0; r < n; ++r)
          if ((m >> r) & 1U) pm |= std::size_t{1} << p[r];
        image |= std::size_t{1} << pm;
      }
      if (image < fam) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    out.push_back(Bigraph::from_predicate(n, cols.size(), [&](std::size_t r, std::size_t c) {
      return ((cols[c] >> r) & 1U) != 0;
    }));
  }
  return out;
}

}  // namespace hyperreg
