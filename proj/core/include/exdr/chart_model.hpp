#pragma once

#include <string>
#include <vector>

#include "exdr/polytope.hpp"

namespace exdr {

/// Shape of a standard chart R^n x T^m_P; its real dimension is n + 2m.
struct ChartSignature {
  std::size_t n = 0;
  std::size_t m = 0;
  Polytope polytope;

  ChartSignature() = default;
  ChartSignature(std::size_t n_, std::size_t m_, Polytope p);

  std::size_t total_dim() const noexcept { return n + 2 * m; }
  std::string describe() const;

  friend bool operator==(const ChartSignature& a, const ChartSignature& b) {
    return a.n == b.n && a.m == b.m && a.polytope == b.polytope;
  }
};

/// H^*(R^n x T^m_P): the exterior algebra on the angular forms dθ that
/// vanish on the unbounded span of P.
struct ChartModel {
  ChartSignature signature;
  std::size_t k = 0;          // rank of the unbounded span
  SaturatedLattice span;      // saturation of the recession lattice
  IntMatrix generators;       // (m-k) x m; row i is the covector of the i-th dθ generator
  std::vector<long> betti;    // b_0..b_N, b_j = C(m-k, j)

  std::size_t h1_dim() const noexcept { return generators.rows(); }
};

ChartModel chart_cohomology(const ChartSignature& sig);

/// H^*_c of a chart whose polytope is complete and line-free. Classes are
/// f*α0 ∧ dθ_{u_1}…dθ_{u_k} ∧ β, with u the unbounded covectors and β a
/// product of surviving generators; only dimensions are stored.
struct CompactModel {
  ChartSignature signature;
  std::size_t k = 0;
  IntMatrix unbounded_covectors;  // k x m, completes `generators` to a unimodular basis
  IntMatrix generators;           // (m-k) x m, same as ChartModel
  std::vector<long> betti;        // c_0..c_N with c_j = b_{N-j}
  std::size_t lowest_degree = 0;  // n + m + k

  /// Human-readable generator for the subset `beta` of surviving generators.
  std::string describe_generator(const std::vector<std::size_t>& beta) const;
};

/// Throws DualityUnavailable when P contains a line or has an open face.
CompactModel chart_compact_cohomology(const ChartSignature& sig);

/// Map on chart cohomology induced by a monomial gluing z_a ↦ Π_b z_b^{A_ab}
/// (row a of A expresses the pullback of source dθ_a in target dθ's).
struct RestrictionMap {
  std::size_t source_h1 = 0;
  std::size_t target_h1 = 0;
  IntMatrix exponents;  // m_source x m_target
  QMatrix h1;           // target_h1 x source_h1, acting on generator coordinates

  /// Induced map Λ^j H^1(source) → Λ^j H^1(target) in lexicographic subset bases.
  QMatrix exterior_power(std::size_t j) const;
};

/// Throws ShapeError on a wrong-shaped A and GluingError when A does not
/// carry the target's unbounded span into the source's.
RestrictionMap restriction_map(const ChartModel& source, const ChartModel& target, const IntMatrix& exponents);

/// k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

/// Matrix of minors: Λ^j T with rows/cols indexed by lexicographic subsets.
QMatrix exterior_power(const QMatrix& t, std::size_t j);

}  // namespace exdr
