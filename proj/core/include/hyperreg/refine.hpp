#pragma once

#include "hyperreg/decomp.hpp"
#include "hyperreg/errors.hpp"
#include "hyperreg/structure.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hyperreg {

/// Live triads (nonempty K₃) split into dense, sparse and error triads.
struct TriadClassification {
  double eps1 = 0, eps2 = 0, hom = 0, mu = 0;
  std::vector<TriadRef> f1, f0, f_err;  // each sorted
  std::size_t trivial = 0;    // error triads that are μ-trivial
  std::size_t irregular = 0;  // non-trivial but not (ε₁,ε₂)-regular
  std::size_t mid_band = 0;   // regular with density in (hom, 1−hom)

  enum class Kind { F1, F0, Err, Dead };
  /// Dead for triads with empty K₃.
  Kind kind(const TriadRef& r) const;
};

/// Throws DomainError unless hom ∈ (0, 1/2).
TriadClassification classify_triads(const ThreeGraph& h, const Decomposition& p, double eps1, double eps2, double hom,
                                    double mu = 0.1);

struct BadPairs {
  double threshold = 0;
  std::vector<std::pair<std::size_t, std::size_t>> psi;  // ordered block pairs
  std::vector<std::size_t> incidence;                    // row-major t×t error counts
  double limit = 0;                                      // threshold·ℓ³t
  double fraction = 0;                                   // |Ψ| / t²
  double bound = 0;                                      // threshold^{1/3}
  bool bound_holds = false;
};

/// Ψ holds the ordered pairs (i,j) with at least threshold·ℓ³t error triads G^{ijs}.
BadPairs bad_pairs(const TriadClassification& cls, const Decomposition& p, double threshold);

struct GroupParams {
  double eps1 = 0.1;
  double eps2 = 0.05;
  double hom = 0.1;
  std::optional<double> delta;  // default hom/10
  std::size_t cap = 2;
  double mu = 0.1;               // triviality
  double psi_threshold = 0.25;
  double cluster_eps = 0.01;     // rows with more than √ε|corners| error entries are exceptional
};

struct PairOverflow {
  std::size_t i = 0, j = 0;
  std::size_t reps = 0;
};

/// Some block pair needs more than C representatives.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t cap_, std::vector<PairOverflow> pairs_)
      : Error(what), cap(cap_), pairs(std::move(pairs_)) {}
  std::size_t cap;
  std::vector<PairOverflow> pairs;
};

struct MergedClass {
  std::size_t color = 0;
  std::vector<std::size_t> sources;  // old colors
  bool residual = false;
  std::size_t size = 0;
  double measured = 0;   // dev₂ normalized sum at its own density
  double predicted = 0;  // Σ ε_α^{1/12} over the sources
  bool prediction_holds = false;
};

struct PairGrouping {
  std::size_t i = 0, j = 0;
  bool in_psi = false;
  std::size_t rows = 0, corners = 0;
  std::size_t reps = 0;
  std::size_t exceptional = 0;
  std::vector<MergedClass> classes;
  std::vector<std::size_t> discarded;  // empty old colors
};

struct GroupedDecomposition {
  Decomposition result;
  std::size_t ell_in = 0, ell_out = 0;
  bool cap_achieved = false;  // ℓ' ≤ C
  bool residual_used = false;
  TriadClassification classification;
  BadPairs psi;
  std::vector<PairGrouping> pairs;  // ordered (i,j), row-major
  DecompositionAudit audit;
  HomogeneityReport homogeneity;  // at μ = 0.1

  /// Old colors of the new color c on (i,j).
  const std::vector<std::size_t>& provenance(std::size_t i, std::size_t j, std::size_t c) const;
};

/// Throws CapExceeded when some pair outside Ψ clusters into more than C representatives.
GroupedDecomposition group_colors(const ThreeGraph& h, const Decomposition& p, const GroupParams& params);

}  // namespace hyperreg
