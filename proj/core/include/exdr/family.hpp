#pragma once

#include <string>

#include "exdr/chart_model.hpp"

namespace exdr {

/// Degree-one comparison for a monomial family of charts
/// R^{n'} x T^{m+m'}_Q -> R^n x T^m_P given by an integer projection
/// (m x (m+m')) on the torus coordinates.
struct FamilyReport {
  std::size_t base_h1 = 0;
  std::size_t fiber_h1 = 0;
  std::size_t total_h1 = 0;
  std::size_t fiber_unbounded_rank = 0;
  bool passed = false;

  std::string describe() const;
};

/// Checks dim H^1(total) = dim H^1(base) + dim H^1(fiber). Throws NotAFamily
/// when the projection is not a surjective lattice map, Q does not map into
/// P, some fiber over a vertex of P is empty, or a ray of P is not covered.
FamilyReport family_h1_check(const ChartSignature& base, const ChartSignature& total, const IntMatrix& projection);

}  // namespace exdr
