#pragma once

#include "hyperreg/colored.hpp"
#include "hyperreg/decomposition.hpp"
#include "hyperreg/dims.hpp"
#include "hyperreg/errors.hpp"
#include "hyperreg/hypergraph.hpp"
#include "hyperreg/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyperreg {

struct ClassCertificate {
  std::size_t color = 0;
  std::size_t size = 0;
  double density = 0;
  double normalized_sum = 0;
  bool passes = false;
};

struct PairPartitionReport {
  std::size_t a_size = 0, b_size = 0, ell = 0;
  double target_dev = 0;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
  bool certified = false;
  double worst_sum = 0;
  double worst_density_gap = 0;
  std::vector<ClassCertificate> classes;  // for the returned (or best) attempt
};

/// Certification failed on every attempt; carries the best attempt's report.
class GenerationError : public Error {
 public:
  GenerationError(const std::string& what, PairPartitionReport best) : Error(what), report(std::move(best)) {}
  PairPartitionReport report;
};

struct PairPartition {
  BipartiteColoredGraph gamma;
  PairPartitionReport report;
};

/// Independent uniform colors per pair; every class must have dev₂ sum ≤ target and density within
/// 1/ℓ ± target^{1/4}. Later attempts continue the same random stream.
PairPartition quasirandom_pair_partition(std::size_t a_size, std::size_t b_size, std::size_t ell, double target_dev,
                                         std::uint64_t seed, std::size_t max_retries = 8);

enum class FillKind { Empty, Random };

/// How triples outside K₃[A,B,C] are set.
struct FillPolicy {
  FillKind kind = FillKind::Empty;
  double p = 0.5;
  std::uint64_t seed = 0;
};

struct BlowupInstance {
  Bigraph base;
  BipartiteColoredGraph gamma;
  std::size_t n_per_class = 0;
  ThreeGraph graph;
  /// Blocks A, B, C_0, …; Γ-colors on A×B and B×A, color 0 elsewhere.
  Decomposition natural;
  /// A = [0,|A|), B next, then each C_v.
  BlowupEmbedding layout;
};

/// Throws DomainError unless Γ is colored by U(G), |A| = |B| > 0 and n_per_class ≥ 1.
BlowupInstance blowup(const Bigraph& g, const BipartiteColoredGraph& gamma, std::size_t n_per_class,
                      const FillPolicy& fill = {});

struct LowerBoundInstance {
  CanonicalKind kind = CanonicalKind::M;
  std::size_t k = 0;
  BlowupInstance instance;
  PairPartitionReport certification;
};

/// |A| = |B| = n, Γ with |U| colors, |C_v| = max(1, n/|V|).
LowerBoundInstance lower_bound_instance(CanonicalKind kind, std::size_t k, std::size_t n, std::uint64_t seed,
                                        double target_dev = 0.005, std::size_t max_retries = 8);

struct MergeReport {
  std::size_t u = 0, u2 = 0, v = 0;
  std::size_t merged_size = 0;
  std::size_t triangles = 0;
  std::size_t in_relation = 0;
  Rational density;
  bool homogeneous = false;  // at μ = 0.1
};

/// The triad (A, B, C_v; P_u ∪ P_u', complete, complete) for the smallest v with (u,v) ∈ E xor (u',v) ∈ E.
/// Throws DomainError "not distinguished" when no such v exists.
MergeReport merge_colors_demo(const BlowupInstance& inst, std::size_t u, std::size_t u2);

inline constexpr std::size_t kTransversalMaxParts = 6;
inline constexpr std::size_t kTransversalMaxClass = 20;

/// Classes V_1..V_t over V(H) and a bigraph per pair i<j (in block-position coordinates), ordered
/// (0,1), (0,2), …, (t−2,t−1).
struct TransversalInput {
  std::vector<Subset> classes;
  std::vector<Bigraph> pairs;
};

/// (v_1..v_t) with v_i ∈ V_i, every pair adjacent, and v_i v_j v_k ∈ E(H) ⇔ ijk ∈ E(F).
/// Throws SizeError past 6 classes or 20 vertices per class, DomainError on shape mismatch.
std::optional<std::vector<std::size_t>> find_transversal(const TransversalInput& in, const ThreeGraph& h,
                                                         const ThreeGraph& f);

/// Exact value, or a saturation marker once a value would exceed the bit limit.
struct HyperValue {
  bool saturated = false;
  BigInt value;
  /// Recursion level where the limit was hit (for saturated values).
  std::size_t depth = 0;

  std::string to_string() const;
};

struct AckOptions {
  std::size_t bit_limit = 1 << 16;
  /// Ack_k(1) for k > 1. The hierarchy as stated uses 1.
  unsigned base = 1;
};

/// Ack_1(x) = 2^x, Ack_k(1) = base, Ack_k(x) = Ack_{k−1}(Ack_k(x−1)). Throws DomainError for k or x < 1.
HyperValue ack(std::size_t k, const BigInt& x, const AckOptions& opt = {});
HyperValue tower(const BigInt& x, const AckOptions& opt = {});

enum class WowzerConvention { Def, Ack3 };

/// Def: W(1) = 1, W(x+1) = Tw(W(x)). Ack3: Ack_3(x).
HyperValue wowzer(const BigInt& x, WowzerConvention c = WowzerConvention::Def, const AckOptions& opt = {});

/// A 3-graph on A ∪ B ∪ C (laid out in that order) whose crossing edges are exactly `edges`.
/// Throws DomainError if some triple is not crossing.
ThreeGraph tripartite_completion(std::size_t a, std::size_t b, std::size_t c, const std::vector<Triple>& edges,
                                 const FillPolicy& fill = {});

/// Every color c becomes c·factor + r with r uniform in [factor), drawn once per unordered vertex pair so
/// (i,j) and (j,i) stay mirrored. Throws DomainError if ℓ·factor exceeds 256.
Decomposition split_colors(const Decomposition& p, std::size_t factor, std::uint64_t seed);

}  // namespace hyperreg
