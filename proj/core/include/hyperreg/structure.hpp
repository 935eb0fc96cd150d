#pragma once

#include "hyperreg/colored.hpp"
#include "hyperreg/decomp.hpp"
#include "hyperreg/dims.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace hyperreg {

inline constexpr std::uint8_t kE0 = 0;
inline constexpr std::uint8_t kE1 = 1;
inline constexpr std::uint8_t kE2 = 2;

/// Pattern edges land in E₁, non-edges in E₀, nothing in any other color. Rows and columns injective.
EmbeddingSearch find_e0e1_copy(const EdgeColoredBigraph& g, const Bigraph& pattern, std::size_t budget = 0);

struct ClusterResult {
  double delta = 0, eps = 0;
  Subset u0;                    // |N_{E₂}(u)| > √ε|V|
  Subset reps;                  // x₁, …, x_m
  std::vector<Subset> clusters;  // clusters[i] starts with reps[i]
};

/// First-fit over U∖U₀ in ascending order: u joins the first rep within δ|V| in both N_{E₁} and N_{E₀},
/// otherwise becomes a new rep. Throws DomainError unless G has three colors and δ, ε ∈ (0,1].
ClusterResult haussler_cluster(const EdgeColoredBigraph& g, double delta, double eps);

/// Recomputes every symmetric difference and the first-fit condition.
bool validate(const EdgeColoredBigraph& g, const ClusterResult& r);

/// (P_js^β, P_ks^γ) over the apex block s.
struct Corner {
  std::size_t apex = 0, beta = 0, gamma = 0;
  friend bool operator==(const Corner&, const Corner&) = default;
};

struct CornerParams {
  double eps2 = 0.1;
  double lo = 0.5, hi = 0.5;
  /// Triads that are not (ε₁,ε₂)-regular go to E₂ when set.
  std::optional<double> eps1;
  /// Classes must pass dev₂(ε₂, 1/ℓ) instead of dev₂(ε₂) at their own density.
  bool equitable = false;
};

/// The corner graph over the ordered block pair (j,k).
struct CornerGraph {
  std::size_t j = 0, k = 0;
  std::vector<std::size_t> edge_vertices;  // colors α of passing P_jk^α
  std::vector<Corner> corner_vertices;
  EdgeColoredBigraph colors;    // kE0, kE1, kE2
  std::vector<double> density;  // row-major, triad densities

  TriadRef triad(std::size_t row, std::size_t col) const {
    const Corner& c = corner_vertices[col];
    return TriadRef{j, k, c.apex, edge_vertices[row], c.beta, c.gamma};
  }
};

/// Throws DomainError unless 0 ≤ lo ≤ hi ≤ 1 and j ≠ k are blocks of P over V(H).
CornerGraph corner_graph(const ThreeGraph& h, const Decomposition& p, std::size_t j, std::size_t k,
                         const CornerParams& params);
/// All ordered pairs j ≠ k in lexicographic order.
std::vector<CornerGraph> corner_graphs(const ThreeGraph& h, const Decomposition& p, const CornerParams& params);

struct Encoding {
  std::size_t j0 = 0, k0 = 0;
  std::vector<std::size_t> f;  // U(G) → colors α over (j0,k0)
  std::vector<Corner> g;       // V(G) → corners
};

struct EncodingSearch {
  SearchOutcome outcome = SearchOutcome::Absent;
  std::optional<Encoding> encoding;
};

/// First pair (j0,k0) in lexicographic order whose corner graph carries G with edges in E₁ and non-edges
/// in E₀. Neither map is required to be injective.
EncodingSearch find_encoding(const Bigraph& pattern, const ThreeGraph& h, const Decomposition& p,
                             const CornerParams& params, std::size_t budget = 0);

/// Re-derives every triad density of the encoding from H.
bool verify_encoding(const Bigraph& pattern, const ThreeGraph& h, const Decomposition& p, const CornerParams& params,
                     const Encoding& e);

}  // namespace hyperreg
