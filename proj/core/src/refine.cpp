#include "hyperreg/refine.hpp"

#include <algorithm>
#include <cmath>

namespace hyperreg {

TriadClassification::Kind TriadClassification::kind(const TriadRef& r) const {
  if (std::binary_search(f1.begin(), f1.end(), r)) return Kind::F1;
  if (std::binary_search(f0.begin(), f0.end(), r)) return Kind::F0;
  if (std::binary_search(f_err.begin(), f_err.end(), r)) return Kind::Err;
  return Kind::Dead;
}

TriadClassification classify_triads(const ThreeGraph& h, const Decomposition& p, double eps1, double eps2, double hom,
                                    double mu) {
  if (!(hom > 0 && hom < 0.5)) throw DomainError("hom must lie in (0, 1/2)");
  TriadClassification c;
  c.eps1 = eps1;
  c.eps2 = eps2;
  c.hom = hom;
  c.mu = mu;
  const auto a = audit(h, p, eps1, eps2, mu);
  for (const auto& row : a.triads) {
    if (!row.nontrivial) {
      ++c.trivial;
      c.f_err.push_back(row.ref);
      continue;
    }
    if (!row.regular) {
      ++c.irregular;
      c.f_err.push_back(row.ref);
      continue;
    }
    const double d = to_double(row.density);
    if (d >= 1.0 - hom) {
      c.f1.push_back(row.ref);
    } else if (d <= hom) {
      c.f0.push_back(row.ref);
    } else {
      ++c.mid_band;
      c.f_err.push_back(row.ref);
    }
  }
  return c;
}

BadPairs bad_pairs(const TriadClassification& cls, const Decomposition& p, double threshold) {
  BadPairs b;
  const std::size_t t = p.t();
  const double ell = static_cast<double>(p.ell());
  b.threshold = threshold;
  b.limit = threshold * ell * ell * ell * static_cast<double>(t);
  b.incidence.assign(t * t, 0);
  for (const auto& r : cls.f_err) ++b.incidence[r.i * t + r.j];
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j)
      if (static_cast<double>(b.incidence[i * t + j]) >= b.limit && b.incidence[i * t + j] > 0) b.psi.emplace_back(i, j);
  b.fraction = t ? static_cast<double>(b.psi.size()) / static_cast<double>(t * t) : 0.0;
  b.bound = std::cbrt(threshold);
  b.bound_holds = b.fraction <= b.bound;
  return b;
}

const std::vector<std::size_t>& GroupedDecomposition::provenance(std::size_t i, std::size_t j, std::size_t c) const {
  const auto& pg = pairs.at(i * result.t() + j);
  for (const auto& m : pg.classes)
    if (m.color == c) return m.sources;
  throw DomainError("no such merged color");
}

namespace {

struct PairPlan {
  PairGrouping info;
  std::vector<Color> remap;  // old color → new color
  std::optional<PairOverflow> overflow;
};

PairPlan plan_pair(const Decomposition& p, const TriadClassification& cls, const ClassTable& classes,
                   const GroupParams& prm, double delta, std::size_t i, std::size_t j, bool in_psi) {
  const std::size_t ell = p.ell(), t = p.t();
  PairPlan plan;
  auto& info = plan.info;
  info.i = i;
  info.j = j;
  info.in_psi = in_psi;
  plan.remap.assign(ell, 0);
  std::vector<std::size_t> nonempty;
  for (std::size_t a = 0; a < ell; ++a) {
    if (classes.at(i, j, a).size == 0)
      info.discarded.push_back(a);
    else
      nonempty.push_back(a);
  }
  if (nonempty.empty()) return plan;
  if (in_psi) {
    info.classes.push_back(MergedClass{0, nonempty, true});
    return plan;
  }
  auto passing = [&](std::size_t x, std::size_t y, std::size_t a) {
    const auto& row = classes.at(x, y, a);
    return row.size > 0 && row.passes;
  };
  std::vector<std::size_t> rows;
  for (std::size_t a : nonempty)
    if (passing(i, j, a)) rows.push_back(a);
  std::vector<Corner> corners;
  for (std::size_t s = 0; s < t; ++s) {
    if (s == i || s == j) continue;
    for (std::size_t b = 0; b < ell; ++b) {
      if (!passing(i, s, b)) continue;
      for (std::size_t c = 0; c < ell; ++c)
        if (passing(j, s, c)) corners.push_back({s, b, c});
    }
  }
  info.rows = rows.size();
  info.corners = corners.size();
  std::vector<std::vector<std::size_t>> groups;
  if (!rows.empty() && corners.empty()) {
    // Nothing distinguishes the rows.
    groups.push_back(rows);
    info.reps = 1;
  } else if (!rows.empty()) {
    EdgeColoredBigraph g(rows.size(), corners.size(), 3, kE2);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < corners.size(); ++c) {
        const TriadRef ref{i, j, corners[c].apex, rows[r], corners[c].beta, corners[c].gamma};
        switch (cls.kind(ref)) {
          case TriadClassification::Kind::F1: g.set_color(r, c, kE1); break;
          case TriadClassification::Kind::F0: g.set_color(r, c, kE0); break;
          default: break;
        }
      }
    const auto cl = haussler_cluster(g, delta, prm.cluster_eps);
    info.reps = cl.reps.size();
    info.exceptional = cl.u0.size();
    if (cl.reps.size() > prm.cap) {
      plan.overflow = PairOverflow{i, j, cl.reps.size()};
      return plan;
    }
    for (const auto& member : cl.clusters) {
      std::vector<std::size_t> g2;
      for (std::size_t r : member) g2.push_back(rows[r]);
      std::sort(g2.begin(), g2.end());
      groups.push_back(std::move(g2));
    }
  }
  std::vector<bool> placed(ell, false);
  for (std::size_t c = 0; c < groups.size(); ++c) {
    for (std::size_t a : groups[c]) placed[a] = true;
    info.classes.push_back(MergedClass{c, groups[c], false});
  }
  std::vector<std::size_t> rest;
  for (std::size_t a : nonempty)
    if (!placed[a]) rest.push_back(a);
  if (!rest.empty()) info.classes.push_back(MergedClass{groups.size(), rest, true});
  return plan;
}

}  // namespace

GroupedDecomposition group_colors(const ThreeGraph& h, const Decomposition& p, const GroupParams& prm) {
  if (h.n() != p.n()) throw DomainError("decomposition is not over V(H)");
  if (prm.cap < 1) throw DomainError("cap must be at least 1");
  const double delta = prm.delta.value_or(prm.hom / 10);
  if (!(delta > 0 && delta <= 1)) throw DomainError("δ must lie in (0,1]");
  GroupedDecomposition out;
  out.ell_in = p.ell();
  out.classification = classify_triads(h, p, prm.eps1, prm.eps2, prm.hom, prm.mu);
  out.psi = bad_pairs(out.classification, p, prm.psi_threshold);
  const ClassTable classes(p, prm.eps2);
  const std::size_t t = p.t();
  std::vector<bool> psi(t * t, false);
  for (auto [i, j] : out.psi.psi) psi[i * t + j] = true;

  std::vector<PairPlan> plans(t * t);
  const long long total = static_cast<long long>(t * t);
#pragma omp parallel for schedule(dynamic)
  for (long long q = 0; q < total; ++q) {
    const std::size_t i = static_cast<std::size_t>(q) / t, j = static_cast<std::size_t>(q) % t;
    plans[static_cast<std::size_t>(q)] = plan_pair(p, out.classification, classes, prm, delta, i, j, psi[i * t + j]);
  }
  std::vector<PairOverflow> overflow;
  for (const auto& pl : plans)
    if (pl.overflow) overflow.push_back(*pl.overflow);
  if (!overflow.empty()) {
    const auto& f = overflow.front();
    throw CapExceeded("pair (" + std::to_string(f.i) + "," + std::to_string(f.j) + ") needs " +
                          std::to_string(f.reps) + " representatives, cap is " + std::to_string(prm.cap),
                      prm.cap, std::move(overflow));
  }

  std::size_t ell_out = 1;
  for (auto& pl : plans) {
    for (const auto& m : pl.info.classes)
      for (std::size_t a : m.sources) pl.remap[a] = static_cast<Color>(m.color);
    ell_out = std::max(ell_out, pl.info.classes.size());
    for (const auto& m : pl.info.classes) out.residual_used |= m.residual && !pl.info.in_psi;
  }
  std::vector<std::vector<Color>> tables(t * t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      const auto src = p.pair_colors(i, j);
      auto& dst = tables[i * t + j];
      dst.reserve(src.size());
      for (Color c : src) dst.push_back(plans[i * t + j].remap[c]);
    }
  out.result = Decomposition(p.n(), p.blocks(), ell_out, std::move(tables));
  out.ell_out = ell_out;
  out.cap_achieved = ell_out <= prm.cap;

  const ClassTable merged(out.result, prm.eps2);
  for (auto& pl : plans) {
    for (auto& m : pl.info.classes) {
      const auto& row = merged.at(pl.info.i, pl.info.j, m.color);
      m.size = row.size;
      if (!row.report) continue;
      m.measured = row.report->normalized_sum;
      double predicted = 0;
      Rational dsum = 0;
      for (std::size_t a : m.sources) {
        const auto& src = classes.at(pl.info.i, pl.info.j, a);
        predicted += std::pow(src.report->normalized_sum, 1.0 / 12);
        dsum += src.report->density;
      }
      m.predicted = predicted;
      m.prediction_holds = row.report->passes(predicted, dsum);
    }
    out.pairs.push_back(std::move(pl.info));
  }
  out.audit = audit(h, out.result, prm.eps1, prm.eps2, 0.1);
  out.homogeneity = homogeneity_audit(h, out.result, 0.1);
  return out;
}

}  // namespace hyperreg
