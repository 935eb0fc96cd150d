#pragma once

#include "hyperreg/bigraph.hpp"
#include "hyperreg/rational.hpp"
#include "hyperreg/trigraph.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace hyperreg {

enum class Arithmetic { Float, Exact };

struct Dev2Report {
  std::size_t u_size = 0;
  std::size_t v_size = 0;
  std::size_t edges = 0;
  Rational density;
  std::optional<Rational> reference_density;
  /// Σ_{u0,u1,w0,w1} Π g(u_i,w_j).
  double raw_sum = 0;
  /// raw_sum / (|U|²|V|²).
  double normalized_sum = 0;
  /// Exact normalized sum, filled in Exact mode.
  std::optional<Rational> exact_normalized;

  /// dev₂(ε) against the declared reference density, or d_B when none was declared.
  bool passes(double eps) const;
  bool passes(double eps, const Rational& d) const;
};

/// Exact mode accepts at most this many vertices per side.
inline constexpr std::size_t kDev2ExactLimit = 64;

/// Throws DomainError on an empty side and SizeError for Exact mode beyond kDev2ExactLimit.
Dev2Report dev2(const Bigraph& b, Arithmetic mode = Arithmetic::Float,
                std::optional<Rational> reference = std::nullopt);

struct Dev23Report {
  Rational d_xy, d_xz, d_yz;
  std::array<Dev2Report, 3> components;  // xy, xz, yz
  std::size_t triangles = 0;
  std::size_t in_relation = 0;
  Rational relative_density;
  double octahedral_sum = 0;
  std::optional<Rational> exact_octahedral;
  /// octahedral_sum / (d_XY⁴ d_YZ⁴ d_XZ⁴ |X|²|Y|²|Z|²); 0 when degenerate.
  double normalized = 0;
  std::optional<Rational> exact_normalized;
  /// Some component density is 0.
  bool degenerate = false;

  bool passes(double eps1, double eps2) const;
  /// Components checked against declared densities (xy, xz, yz).
  bool passes(double eps1, double eps2, const std::array<Rational, 3>& declared) const;
};

/// Exact dev₂,₃ accepts at most this many vertices per class.
inline constexpr std::size_t kDev23ExactLimit = 16;

/// H is implicitly restricted to K₃(G). Pass `components` to reuse dev₂ reports of the three bigraphs.
Dev23Report dev23(const Trigraph& h, const Triad& g, Arithmetic mode = Arithmetic::Float,
                  const std::array<Dev2Report, 3>* components = nullptr);

/// Octahedral sum only (no component reports); used by decomposition audits.
double octahedral_sum(const Trigraph& h, const Triad& g);

struct CountingResidual {
  std::size_t triangles = 0;
  Rational expected;  // d_AB d_BC d_AC |A||B||C|
  Rational residual;
  double volume = 0;  // |A||B||C|

  double bound(double eps) const;
  bool within(double eps) const;
};

/// A, B, C are the X, Y, Z classes of G.
CountingResidual counting_residual(const Triad& g, const Rational& d_ab, const Rational& d_bc, const Rational& d_ac);

struct SubtriadDeviation {
  Rational lhs;
  Rational relative_density;  // d_G(H)
  std::size_t sub_triangles = 0;
  std::size_t sub_in_relation = 0;
  double scale = 0;  // d₁₂d₁₃d₂₃|V₁||V₂||V₃|

  double bound(double eps1) const;
  bool within(double eps1) const;
};

/// Gsub lives on the vertex lists (xs, ys, zs) of G; its edges must be edges of G.
SubtriadDeviation subtriad_deviation(const Trigraph& h, const Triad& g, const Triad& gsub, const Subset& xs,
                                     const Subset& ys, const Subset& zs);

enum class RegularityMode { Exhaustive, Sampled, Certificate };

enum class RegularityVerdict { ExactPass, ExactFail, SampledNoCounterexample, Dev2Certified };

struct RegularityWitness {
  Subset rows;
  Subset cols;
  Rational sub_density;
};

struct RegularityResult {
  RegularityVerdict verdict = RegularityVerdict::ExactPass;
  std::optional<RegularityWitness> witness;
  /// Certificate mode: dev₂ normalized sum, a proxy with no regularity claim.
  double level = 0;
  std::size_t trials = 0;
};

inline constexpr std::size_t kRegularityExhaustiveLimit = 12;

/// Checks |d(A',B') − d(A,B)| ≤ ε over pairs with |A'| ≥ ε|A|, |B'| ≥ ε|B|.
RegularityResult eps_regular(const Bigraph& b, double eps, RegularityMode mode, std::size_t trials = 0,
                             std::uint64_t seed = 0);

/// Fraction of xy ∈ E_XY whose common Z-neighbourhood lies within (1 ± ε^{1/100}) d_XZ d_YZ |Z|.
Rational neighborhood_stat(const Triad& g, double eps);

struct UnionReport {
  Bigraph graph;
  Dev2Report first, second, merged;
  double predicted_eps = 0;
  Rational predicted_density;
  bool prediction_holds = false;
};

/// Throws DomainError for mismatched shapes or overlapping edges.
UnionReport union_colors(const Bigraph& b1, const Bigraph& b2);

struct SubpairReport {
  Bigraph graph;
  Dev2Report parent, restricted;
  double predicted_eps = 0;
  Rational predicted_density;
  bool prediction_holds = false;
};

/// Throws DomainError when a side falls below γ times the parent side or repeats a vertex.
SubpairReport subpair(const Bigraph& b, const Subset& rows, const Subset& cols, double gamma);

}  // namespace hyperreg
