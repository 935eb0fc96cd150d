#pragma once

#include "hyperreg/bigraph.hpp"
#include "hyperreg/colored.hpp"
#include "hyperreg/hypergraph.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hyperreg {

enum class SearchOutcome { Found, Absent, Unknown };

std::string to_string(SearchOutcome o);

/// a_1..a_k, b_1..b_k and c_S for every S ⊆ [k]², where S is a mask with bit i·k+j for (i,j).
struct Vc2Witness {
  std::size_t k = 0;
  std::vector<std::size_t> a, b;
  std::vector<std::size_t> c;  // indexed by mask, 2^(k²) entries
};

/// Re-checks every triple of the witness against H.
bool verify(const ThreeGraph& h, const Vc2Witness& w);

enum class Vc2Mode { Exhaustive, Randomized };

struct Vc2Search {
  SearchOutcome outcome = SearchOutcome::Unknown;
  std::optional<Vc2Witness> witness;
  bool exhaustive = false;
  std::size_t tuples = 0;
};

inline constexpr std::size_t kVc2ExhaustiveMax = 2;
inline constexpr std::size_t kVc2RandomizedMax = 4;

/// Exhaustive for k ≤ 2; randomized (k ≤ 4) tries `trials` random tuples and reports Unknown on failure.
Vc2Search vc2_at_least(const ThreeGraph& h, std::size_t k, Vc2Mode mode = Vc2Mode::Exhaustive,
                       std::size_t trials = 10000, std::uint64_t seed = 0);

struct Vc2Value {
  std::size_t value = 0;
  bool exact = false;
  std::optional<Vc2Witness> witness;
};

/// Largest k ≤ cap with a verified witness. Exact only if the search for k+1 was exhaustive and failed.
Vc2Value vc2(const ThreeGraph& h, std::size_t cap, std::size_t trials = 10000, std::uint64_t seed = 0);

struct Quotient {
  std::vector<std::size_t> row_class;  // original row → class
  std::vector<std::size_t> col_class;  // original column → class
  std::vector<Subset> row_classes;
  std::vector<Subset> col_classes;
  Bigraph graph;
};

/// Classes are numbered by first occurrence.
Quotient sim_quotient(const Bigraph& g);
bool is_irreducible(const Bigraph& g);

enum class CanonicalKind { H, M, Mbar, Ubg };

std::string to_string(CanonicalKind k);
/// Accepts "H", "M", "Mbar" and "Ubg" in any letter case.
std::optional<CanonicalKind> parse_canonical_kind(const std::string& s);

inline constexpr std::size_t kUbgMax = 20;
inline constexpr std::size_t kCanonicalMax = 4096;

/// 0-indexed. U_bg(k) has row s ∈ [2^k) adjacent to column i iff bit i of s is set.
Bigraph canonical(CanonicalKind kind, std::size_t k);

struct Embedding {
  std::vector<std::size_t> row_map;
  std::vector<std::size_t> col_map;
};

/// Injective maps with host edge ⇔ pattern edge on every pattern pair.
bool verify_induced(const Bigraph& host, const Bigraph& pattern, const Embedding& e);

struct EmbeddingSearch {
  SearchOutcome outcome = SearchOutcome::Unknown;
  std::optional<Embedding> embedding;
  std::size_t nodes = 0;
};

/// Whether host pair (u,v) may carry a pattern pair that is an edge (`edge`) or a non-edge.
using PairPredicate = std::function<bool(std::size_t u, std::size_t v, bool edge)>;

struct MatchOptions {
  bool injective_rows = true;
  bool injective_cols = true;
  std::size_t budget = 0;  // search nodes, 0 = unbounded
};

/// Backtracking over row and column maps, alternating rows and columns, candidates in ascending order.
EmbeddingSearch find_pattern(std::size_t host_rows, std::size_t host_cols, const Bigraph& pattern,
                             const PairPredicate& fits, const MatchOptions& options = {});

/// Backtracking with candidate pruning; `budget` bounds search nodes (0 = unbounded).
EmbeddingSearch find_induced(const Bigraph& host, const Bigraph& pattern, std::size_t budget = 0);

struct CanonicalHit {
  CanonicalKind kind = CanonicalKind::H;
  Embedding embedding;
};

struct CanonicalSearch {
  std::optional<CanonicalHit> hit;
  bool exhaustive = true;  // false if some search ran out of budget
};

/// Tries H(k), M(k), M̄(k) in that order. Throws DomainError unless G is irreducible.
CanonicalSearch find_canonical(const Bigraph& g, std::size_t k, std::size_t budget = 0);

/// Image of an (n,Γ)-blowup: vertices for A, for B and for each C_v.
struct BlowupEmbedding {
  std::vector<std::size_t> a, b;
  std::vector<std::vector<std::size_t>> c;
};

struct GDimensionVerdict {
  bool verified = false;
  SearchOutcome outcome = SearchOutcome::Unknown;  // for the search form
  std::optional<BlowupEmbedding> embedding;
  /// First crossing triple that breaks the blowup conditions.
  std::optional<std::array<std::size_t, 3>> violation;
  bool expected_edge = false;
};

inline constexpr std::size_t kGDimensionExhaustiveMax = 15;

/// With an embedding, checks that every crossing triple xy ∈ P_u, z ∈ C_v is an edge exactly when (u,v) ∈ E(G).
/// Without one, searches all injective placements (only when |V(H)| ≤ 15).
GDimensionVerdict g_dimension_check(const ThreeGraph& h, const Bigraph& g, std::size_t n,
                                    const BipartiteColoredGraph& gamma,
                                    const std::optional<BlowupEmbedding>& embedding);

/// One representative per row-permutation class of irreducible bigraphs with n rows (n ≤ 4).
std::vector<Bigraph> irreducible_bigraphs(std::size_t n);

}  // namespace hyperreg
