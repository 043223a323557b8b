#pragma once

#include <optional>
#include <vector>

#include "exdr/matrix.hpp"

namespace exdr {

// Exact linear algebra over Q. Everything here is deterministic: pivots are
// the first nonzero entry scanning left to right, top to bottom.

struct RowEchelon {
  QMatrix reduced;                     // reduced row echelon form
  std::vector<std::size_t> pivot_cols; // one per nonzero row
};

RowEchelon rref(QMatrix m);

std::size_t rank(const QMatrix& m);

/// Fraction-free (Bareiss) rank of an integer matrix.
std::size_t rank(const IntMatrix& m);

Rational determinant(QMatrix m);

/// Basis of {x : m x = 0}, returned as columns of a cols() x nullity matrix.
QMatrix kernel(const QMatrix& m);

/// Basis of the column space, as columns (selected pivot columns of m).
QMatrix column_space(const QMatrix& m);

/// Basis of the orthogonal complement of the column space in the standard
/// inner product, i.e. kernel(m^T).
QMatrix orthogonal_complement(const QMatrix& m);

/// Some solution of m x = b, or nullopt when inconsistent.
std::optional<QVector> solve(const QMatrix& m, const QVector& b);

/// Solution X of m X = b (b with several columns); nullopt when inconsistent.
std::optional<QMatrix> solve(const QMatrix& m, const QMatrix& b);

std::optional<QMatrix> inverse(const QMatrix& m);

/// Scale a rational vector to the primitive integer vector on the same ray.
IntVector primitive(const QVector& v);

}  // namespace exdr
