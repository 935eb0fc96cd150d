#include "hyperreg/decomp.hpp"

#include "hyperreg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace hyperreg {

TriadRef TriadRange::iterator::operator*() const {
  std::size_t p = pos_;
  TriadRef r;
  r.gamma = p % ell_;
  p /= ell_;
  r.beta = p % ell_;
  p /= ell_;
  r.alpha = p % ell_;
  p /= ell_;
  r.k = p % t_;
  p /= t_;
  r.j = p % t_;
  r.i = p / t_;
  return r;
}

TriadRange triads_of(const Decomposition& p) { return TriadRange(p.t(), p.ell()); }

Triad materialize(const Decomposition& p, const TriadRef& r) {
  return Triad(p.class_bigraph(r.i, r.j, r.alpha), p.class_bigraph(r.i, r.k, r.beta), p.class_bigraph(r.j, r.k, r.gamma));
}

Trigraph lift_triad(const ThreeGraph& h, const Decomposition& p, const TriadRef& r) {
  return lift(h, p.block(r.i), p.block(r.j), p.block(r.k));
}

namespace {

void check_over(const ThreeGraph& h, const Decomposition& p) {
  if (h.n() != p.n()) throw DomainError("decomposition is not over the vertex set of the 3-graph");
}

}  // namespace

TriadTable::TriadTable(const Decomposition& p, const ThreeGraph* h) : t_(p.t()), ell_(p.ell()) {
  if (h) check_over(*h, p);
  const double entries = std::pow(static_cast<double>(t_ * ell_), 3);
  if (entries > static_cast<double>(kMaxEntries)) throw SizeError("too many triads for a dense triad table");
  triangles_.assign(static_cast<std::size_t>(entries), 0);
  in_relation_.assign(triangles_.size(), 0);
  const std::size_t n = p.n();
  const std::size_t l3 = ell_ * ell_ * ell_;
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t bx = p.block_of(x);
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t by = p.block_of(y);
      const std::size_t a = p.color_of(x, y);
      const std::size_t head = (bx * t_ + by) * t_;
      auto nb = h ? h->pair_neighborhood(x, y) : std::span<const Word>{};
      for (std::size_t z = 0; z < n; ++z) {
        const std::size_t at = (head + p.block_of(z)) * l3 + (a * ell_ + p.color_of(x, z)) * ell_ + p.color_of(y, z);
        ++triangles_[at];
        if (h && ((nb[z / kWordBits] >> (z % kWordBits)) & 1U)) ++in_relation_[at];
      }
    }
  }
}

Rational TriadTable::density(std::size_t index) const {
  if (triangles_[index] == 0) return Rational(0);
  return make_rational(in_relation_[index], triangles_[index]);
}

ClassTable::ClassTable(const Decomposition& p, double eps2) : t_(p.t()), ell_(p.ell()) {
  rows_.resize(t_ * t_ * ell_);
  const Rational inv_ell = make_rational(1, ell_);
  const long long total = static_cast<long long>(rows_.size());
#pragma omp parallel for schedule(dynamic)
  for (long long idx = 0; idx < total; ++idx) {
    const auto q = static_cast<std::size_t>(idx);
    ClassRow& row = rows_[q];
    row.alpha = q % ell_;
    row.j = (q / ell_) % t_;
    row.i = q / (ell_ * t_);
    row.size = p.class_size(row.i, row.j, row.alpha);
    if (p.block_size(row.i) == 0 || p.block_size(row.j) == 0) continue;
    row.report = dev2(p.class_bigraph(row.i, row.j, row.alpha));
    row.passes = row.report->passes(eps2, row.report->density);
    row.passes_equitable = row.report->passes(eps2, inv_ell);
  }
}

bool is_nontrivial(const Decomposition& p, const TriadRef& r, double mu) {
  const double n = static_cast<double>(p.n()), t = static_cast<double>(p.t()), ell = static_cast<double>(p.ell());
  const double vi = static_cast<double>(p.block_size(r.i)), vj = static_cast<double>(p.block_size(r.j)),
               vk = static_cast<double>(p.block_size(r.k));
  if (std::min({vi, vj, vk}) < mu * n / t) return false;
  if (static_cast<double>(p.class_size(r.i, r.j, r.alpha)) < mu * vi * vj / ell) return false;
  if (static_cast<double>(p.class_size(r.i, r.k, r.beta)) < mu * vi * vk / ell) return false;
  if (static_cast<double>(p.class_size(r.j, r.k, r.gamma)) < mu * vj * vk / ell) return false;
  return true;
}

bool is_homogeneous(const Rational& density, double mu) {
  if (density == 0 || density == 1) return true;
  const double d = to_double(density);
  return d < mu || d > 1.0 - mu;
}

namespace {

double cube(std::size_t n) { return std::pow(static_cast<double>(n), 3); }

/// Rows for all triads with nonempty K₃; octahedral sums only when `classes` is given.
std::vector<TriadRow> evaluate(const ThreeGraph& h, const Decomposition& p, const TriadTable& table,
                               const ClassTable* classes, double eps1, double mu) {
  std::vector<std::size_t> live;
  for (std::size_t q = 0; q < table.size(); ++q)
    if (table.triangles(q) > 0) live.push_back(q);
  std::vector<TriadRow> rows(live.size());
  const long long count = static_cast<long long>(live.size());
#pragma omp parallel for schedule(dynamic)
  for (long long idx = 0; idx < count; ++idx) {
    const std::size_t q = live[static_cast<std::size_t>(idx)];
    TriadRow& row = rows[static_cast<std::size_t>(idx)];
    row.ref = table.ref(q);
    row.triangles = table.triangles(q);
    row.in_relation = table.in_relation(q);
    row.density = table.density(q);
    row.homogeneous = is_homogeneous(row.density, mu);
    row.nontrivial = is_nontrivial(p, row.ref, mu);
    if (!classes) continue;
    const auto& cxy = classes->at(row.ref.i, row.ref.j, row.ref.alpha);
    const auto& cxz = classes->at(row.ref.i, row.ref.k, row.ref.beta);
    const auto& cyz = classes->at(row.ref.j, row.ref.k, row.ref.gamma);
    if (row.in_relation != 0 && row.in_relation != row.triangles) {
      row.octahedral_sum = octahedral_sum(lift_triad(h, p, row.ref), materialize(p, row.ref));
      const double dp = to_double(cxy.report->density * cxz.report->density * cyz.report->density);
      const double vol = static_cast<double>(p.block_size(row.ref.i) * p.block_size(row.ref.j) * p.block_size(row.ref.k));
      row.normalized = row.octahedral_sum / (std::pow(dp, 4) * vol * vol);
    }
    row.regular = cxy.passes && cxz.passes && cyz.passes && row.normalized <= eps1;
  }
  return rows;
}

}  // namespace

DecompositionAudit audit(const ThreeGraph& h, const Decomposition& p, double eps1, double eps2, double mu) {
  check_over(h, p);
  DecompositionAudit a;
  a.eps1 = eps1;
  a.eps2 = eps2;
  a.mu = mu;
  a.n = p.n();
  const TriadTable table(p, &h);
  const ClassTable classes(p, eps2);
  a.classes = classes.rows();
  for (const auto& c : a.classes) {
    if (c.passes) a.pairs_covered += c.size;
    if (c.passes_equitable) a.equitable_pairs_covered += c.size;
  }
  a.triads = evaluate(h, p, table, &classes, eps1, mu);
  for (const auto& r : a.triads) {
    if (r.regular) a.triples_covered += r.triangles;
    if (r.homogeneous) a.homogeneous_triples += r.triangles;
    if (r.nontrivial) a.nontrivial_triples += r.triangles;
  }
  const double n2 = static_cast<double>(a.n) * static_cast<double>(a.n), n3 = cube(a.n);
  if (a.n > 0) {
    a.pair_coverage = static_cast<double>(a.pairs_covered) / n2;
    a.equitable_pair_coverage = static_cast<double>(a.equitable_pairs_covered) / n2;
    a.triple_coverage = static_cast<double>(a.triples_covered) / n3;
    a.homogeneity_coverage = static_cast<double>(a.homogeneous_triples) / n3;
    a.nontrivial_coverage = static_cast<double>(a.nontrivial_triples) / n3;
  }
  a.equipartition = p.is_equipartition();
  a.equitable = a.equipartition && a.equitable_pair_coverage >= 1.0 - eps1;
  a.regular = a.pair_coverage >= 1.0 - eps1 && a.triple_coverage >= 1.0 - eps1;
  return a;
}

HomogeneityReport homogeneity_audit(const ThreeGraph& h, const Decomposition& p, double mu) {
  check_over(h, p);
  HomogeneityReport r;
  r.mu = mu;
  const TriadTable table(p, &h);
  r.triads = evaluate(h, p, table, nullptr, 0, mu);
  for (const auto& row : r.triads)
    if (row.homogeneous) r.homogeneous_triples += row.triangles;
  if (p.n() > 0) r.coverage = static_cast<double>(r.homogeneous_triples) / cube(p.n());
  return r;
}

NontrivialReport nontrivial_coverage(const Decomposition& p, double mu) {
  NontrivialReport r;
  r.mu = mu;
  const TriadTable table(p, nullptr);
  for (std::size_t q = 0; q < table.size(); ++q) {
    const TriadRef ref = table.ref(q);
    if (!is_nontrivial(p, ref, mu)) continue;
    r.nontrivial.push_back(ref);
    r.covered_triples += table.triangles(q);
  }
  if (p.n() > 0) r.coverage = static_cast<double>(r.covered_triples) / cube(p.n());
  r.bound = 1.0 - 2.0 * mu;
  r.bound_holds = r.coverage >= r.bound;
  return r;
}

SliceResult slice(const ThreeGraph& h, const Decomposition& p, const std::vector<std::size_t>& refinement, std::size_t c,
                  double eps1, double eps2, double k) {
  check_over(h, p);
  if (refinement.size() != p.n()) throw DomainError("refinement must label every vertex");
  if (c == 0 || k <= 0) throw DomainError("split factor and K must be positive");

  std::vector<Subset> blocks;
  std::vector<std::size_t> coarse_of;
  std::map<std::size_t, std::size_t> fine_index;     // label → fine block
  std::map<std::size_t, std::size_t> label_coarse;   // label → coarse block
  for (std::size_t b = 0; b < p.t(); ++b) {
    std::size_t parts = 0;
    for (std::size_t v : p.block(b)) {
      const std::size_t label = refinement[v];
      auto [it, fresh] = label_coarse.emplace(label, b);
      if (!fresh && it->second != b) throw DomainError("refinement label spans two blocks");
      if (fresh) {
        fine_index[label] = blocks.size();
        blocks.emplace_back();
        coarse_of.push_back(b);
        ++parts;
      }
      blocks[fine_index[label]].push_back(v);
    }
    if (parts > c) throw DomainError("block splits into more than C parts");
  }

  const std::size_t tf = blocks.size();
  std::vector<std::vector<Color>> tables(tf * tf);
  for (std::size_t x = 0; x < tf; ++x)
    for (std::size_t y = 0; y < tf; ++y) {
      auto& tab = tables[x * tf + y];
      tab.reserve(blocks[x].size() * blocks[y].size());
      for (std::size_t u : blocks[x])
        for (std::size_t v : blocks[y]) tab.push_back(p.color_of(u, v));
    }

  SliceResult r{Decomposition(p.n(), std::move(blocks), p.ell(), std::move(tables)), std::move(coarse_of), 0, 0, {}};
  const double e = 1.0 / (2.0 * k * k);
  const double cc = static_cast<double>(c);
  r.predicted_eps1 = 4.0 * std::pow(eps1, e) * std::pow(cc, k);
  r.predicted_eps2 = 2.0 * cc * std::pow(eps1, -e) * std::pow(eps2, 1.0 / 12);
  r.audit = audit(h, r.result, eps1, eps2);
  return r;
}

std::string triad_csv(const std::vector<TriadRow>& rows) {
  std::ostringstream out;
  out << "i,j,k,alpha,beta,gamma,triangles,in_relation,density,octahedral_sum,normalized,regular,homogeneous,nontrivial\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    out << r.ref.i << ',' << r.ref.j << ',' << r.ref.k << ',' << r.ref.alpha << ',' << r.ref.beta << ',' << r.ref.gamma
        << ',' << r.triangles << ',' << r.in_relation << ',' << num(to_double(r.density)) << ','
        << num(r.octahedral_sum) << ',' << num(r.normalized) << ',' << r.regular << ',' << r.homogeneous << ','
        << r.nontrivial << '\n';
  }
  return out.str();
}

}  // namespace hyperreg
