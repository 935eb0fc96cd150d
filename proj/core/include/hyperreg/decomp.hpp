#pragma once

#include "hyperreg/decomposition.hpp"
#include "hyperreg/hypergraph.hpp"
#include "hyperreg/quasirandom.hpp"
#include "hyperreg/trigraph.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hyperreg {

/// G^{ijk}_{αβγ} = (V_i, V_j, V_k; P_ij^α, P_ik^β, P_jk^γ).
struct TriadRef {
  std::size_t i = 0, j = 0, k = 0;
  std::size_t alpha = 0, beta = 0, gamma = 0;
  friend auto operator<=>(const TriadRef&, const TriadRef&) = default;
};

/// All t³ℓ³ triad references in lexicographic order, generated on demand.
class TriadRange {
 public:
  class iterator {
   public:
    using value_type = TriadRef;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(std::size_t t, std::size_t ell, std::size_t pos) : t_(t), ell_(ell), pos_(pos) {}
    TriadRef operator*() const;
    iterator& operator++() {
      ++pos_;
      return *this;
    }
    iterator operator++(int) {
      auto old = *this;
      ++pos_;
      return old;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.pos_ == b.pos_; }

   private:
    std::size_t t_ = 0, ell_ = 0, pos_ = 0;
  };

  TriadRange(std::size_t t, std::size_t ell) : t_(t), ell_(ell) {}
  iterator begin() const { return {t_, ell_, 0}; }
  iterator end() const { return {t_, ell_, size()}; }
  std::size_t size() const { return t_ * t_ * t_ * ell_ * ell_ * ell_; }

 private:
  std::size_t t_, ell_;
};

TriadRange triads_of(const Decomposition& p);
/// The triad in block-position coordinates.
Triad materialize(const Decomposition& p, const TriadRef& ref);
/// H̄ over V_i × V_j × V_k in block-position coordinates.
Trigraph lift_triad(const ThreeGraph& h, const Decomposition& p, const TriadRef& ref);

/// |K₃| and |Ē ∩ K₃| for every triad, from one pass over V³.
class TriadTable {
 public:
  static constexpr std::size_t kMaxEntries = std::size_t{1} << 22;

  /// Without H only triangle counts are filled. Throws SizeError beyond kMaxEntries triads.
  TriadTable(const Decomposition& p, const ThreeGraph* h);

  std::size_t index(const TriadRef& r) const {
    return ((((r.i * t_ + r.j) * t_ + r.k) * ell_ + r.alpha) * ell_ + r.beta) * ell_ + r.gamma;
  }
  TriadRef ref(std::size_t index) const { return *TriadRange::iterator(t_, ell_, index); }
  std::size_t size() const { return triangles_.size(); }
  std::size_t triangles(std::size_t index) const { return triangles_[index]; }
  std::size_t in_relation(std::size_t index) const { return in_relation_[index]; }
  Rational density(std::size_t index) const;

 private:
  std::size_t t_, ell_;
  std::vector<std::size_t> triangles_;
  std::vector<std::size_t> in_relation_;
};

/// One color class P_ij^α with its dev₂ report.
struct ClassRow {
  std::size_t i = 0, j = 0, alpha = 0;
  std::size_t size = 0;
  std::optional<Dev2Report> report;  // absent when a block is empty
  bool passes = false;               // dev₂(ε₂) at its own density
  bool passes_equitable = false;     // dev₂(ε₂, 1/ℓ)
};

/// dev₂ reports for all t²ℓ classes.
class ClassTable {
 public:
  ClassTable(const Decomposition& p, double eps2);
  const ClassRow& at(std::size_t i, std::size_t j, std::size_t alpha) const {
    return rows_[(i * t_ + j) * ell_ + alpha];
  }
  const std::vector<ClassRow>& rows() const { return rows_; }

 private:
  std::size_t t_, ell_;
  std::vector<ClassRow> rows_;
};

/// μ-non-trivial: all three blocks ≥ μ|V|/t and all three classes ≥ μ|V_a||V_b|/ℓ.
bool is_nontrivial(const Decomposition& p, const TriadRef& ref, double mu);

/// d ∈ [0,μ) ∪ (1−μ,1], with exact 0 and 1 always counted.
bool is_homogeneous(const Rational& density, double mu);

struct TriadRow {
  TriadRef ref;
  std::size_t triangles = 0;
  std::size_t in_relation = 0;
  Rational density;
  double octahedral_sum = 0;
  double normalized = 0;
  bool regular = false;
  bool homogeneous = false;
  bool nontrivial = false;
};

struct DecompositionAudit {
  double eps1 = 0, eps2 = 0, mu = 0;
  std::size_t n = 0;
  std::size_t pairs_covered = 0;
  std::size_t equitable_pairs_covered = 0;
  std::size_t triples_covered = 0;
  std::size_t homogeneous_triples = 0;
  std::size_t nontrivial_triples = 0;
  double pair_coverage = 0;
  double equitable_pair_coverage = 0;
  double triple_coverage = 0;
  double homogeneity_coverage = 0;
  double nontrivial_coverage = 0;
  bool equipartition = false;
  bool equitable = false;
  bool regular = false;  // pair_coverage ≥ 1−ε₁ and triple_coverage ≥ 1−ε₁
  std::vector<ClassRow> classes;
  std::vector<TriadRow> triads;  // one row per triad with nonempty K₃
};

/// Throws DomainError unless P is over V(H).
DecompositionAudit audit(const ThreeGraph& h, const Decomposition& p, double eps1, double eps2, double mu = 0.1);

struct HomogeneityReport {
  double mu = 0;
  std::size_t homogeneous_triples = 0;
  double coverage = 0;
  std::vector<TriadRow> triads;
};

HomogeneityReport homogeneity_audit(const ThreeGraph& h, const Decomposition& p, double mu);

struct NontrivialReport {
  double mu = 0;
  std::vector<TriadRef> nontrivial;
  std::size_t covered_triples = 0;
  double coverage = 0;
  double bound = 0;  // 1 − 2μ
  bool bound_holds = false;
};

NontrivialReport nontrivial_coverage(const Decomposition& p, double mu);

struct SliceResult {
  Decomposition result;
  std::vector<std::size_t> coarse_of;  // fine block → coarse block
  double predicted_eps1 = 0;
  double predicted_eps2 = 0;
  DecompositionAudit audit;  // at the declared (ε₁, ε₂)
};

/// `refinement[v]` labels the fine block of v. Fine blocks are ordered by coarse block, then by first
/// appearance in the coarse block's listing. Throws DomainError if a label spans two coarse blocks or
/// a coarse block splits into more than C parts.
SliceResult slice(const ThreeGraph& h, const Decomposition& p, const std::vector<std::size_t>& refinement, std::size_t c,
                  double eps1, double eps2, double k);

/// Header row plus one line per triad row.
std::string triad_csv(const std::vector<TriadRow>& rows);

}  // namespace hyperreg
