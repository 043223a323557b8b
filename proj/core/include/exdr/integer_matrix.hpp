#pragma once

#include <vector>

#include "exdr/matrix.hpp"

namespace exdr {

/// Smith normal form: left * input * right == diagonal, with left and right
/// unimodular and the nonzero diagonal entries positive and forming a
/// divisibility chain d_1 | d_2 | ... .
struct SmithForm {
  IntMatrix left;
  IntMatrix diagonal;
  IntMatrix right;
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& input);

/// Rank over Q of an integer matrix (number of nonzero invariant factors).
std::size_t rational_rank(const IntMatrix& m);

BigInt integer_determinant(const IntMatrix& m);

bool is_unimodular(const IntMatrix& m);

/// A saturated sublattice L = span_Q(generators) ∩ Z^d together with a
/// unimodular completion. `basis` rows 0..rank-1 span L; the remaining rows
/// of `completion` map to a Z-basis of Z^d / L. `annihilator` rows form a
/// Z-basis of {c ∈ Z^d : c·l = 0 for all l ∈ L}; `coannihilator` rows extend
/// it to a unimodular basis of the dual lattice.
struct SaturatedLattice {
  std::size_t ambient_dim = 0;
  std::size_t rank = 0;
  IntMatrix basis;          // rank x d
  IntMatrix quotient_basis; // (d - rank) x d, representatives of Z^d / L
  IntMatrix annihilator;    // (d - rank) x d
  IntMatrix coannihilator;  // rank x d
};

/// Saturation of the lattice generated by the given integer vectors (each of
/// length `ambient_dim`). Bases are canonical: they are read off the Smith
/// normal form of the generator matrix.
SaturatedLattice saturate(const std::vector<IntVector>& generators, std::size_t ambient_dim);

IntMatrix int_from_rows(const std::vector<IntVector>& rows, std::size_t cols);

}  // namespace exdr
