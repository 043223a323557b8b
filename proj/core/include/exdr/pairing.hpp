#pragma once

#include <string>
#include <vector>

#include "exdr/integrate.hpp"

namespace exdr {

/// Constant representatives of H^j: wedges of j generator forms dθ_g
/// (lexicographic subsets of ChartModel::generators).
std::vector<FormExpr> cohomology_representatives(const ChartSignature& sig, std::size_t j);

/// Representatives of H^{N-j}_c: φ/(2π)^m dx…dr… ∧ dθ_{u_1}…dθ_{u_k} ∧ β,
/// φ a product of bumps of total integral 1 placed at the first corner,
/// u the unbounded covectors and β a wedge of m-k-j generators.
std::vector<FormExpr> compact_representatives(const ChartSignature& sig, std::size_t j);

struct PairingMatrix {
  std::size_t degree = 0;
  std::vector<std::vector<Estimate>> entries;  // rows: H^j, columns: H_c^{N-j}
  std::size_t expected_rank = 0;                // C(m-k, j)
  std::size_t rank = 0;                         // exact rank of the rounded matrix
  double max_deviation = 0.0;                   // max |entry - nearest integer|

  bool nondegenerate(double tolerance) const {
    return rank == expected_rank && rank == entries.size() && max_deviation <= tolerance;
  }
  std::string to_text() const;
};

/// Integration pairing ∫ a ∧ c between the representatives above. Throws
/// DualityUnavailable when P contains a line or has an open face.
PairingMatrix pairing_matrix(const ChartSignature& sig, std::size_t j, const QuadratureSpec& spec);

}  // namespace exdr
