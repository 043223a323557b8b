#pragma once

#include <optional>
#include <string>

#include "exdr/matrix.hpp"

namespace exdr {

// Linear algebra of orientations. Maps are matrices between standard
// oriented spaces Q^dim; everything is exact.

/// An oriented subspace: an ordered basis (columns) of an ambient Q^d and a
/// sign. The sign only matters for points; otherwise it is folded into the
/// first column.
struct OrientedSpace {
  QMatrix basis;
  int sign = 1;

  std::size_t dimension() const { return basis.cols(); }
  std::size_t ambient() const { return basis.rows(); }
};

/// Sign of the determinant of a square matrix (0 if singular).
int det_sign(const QMatrix& m);

/// +1/-1 comparing two bases of the same subspace; throws ShapeError when
/// they span different subspaces.
int compare_orientation(const OrientedSpace& a, const OrientedSpace& b);

/// Kernel oriented relative to a cokernel.
struct RelativeOrientation {
  OrientedSpace kernel;  // in X
  QMatrix cokernel;      // columns in Y, a complement of the image
  int sign = 1;          // sign of the natural map for the unflipped kernel basis
};

/// Orients ker A so that coker A ⊕ X = ker A ⊕ Y is an oriented isomorphism:
/// c ↦ (0, c), x ↦ (orthogonal projection of x onto ker A, Ax). The cokernel
/// is the orthogonal complement of the image unless another complement is
/// supplied.
RelativeOrientation relative_orientation(const QMatrix& a, const std::optional<QMatrix>& cokernel = std::nullopt);

/// Same with the factors on the other side: X ⊕ coker A = Y ⊕ ker A.
RelativeOrientation relative_orientation_right(const QMatrix& a, const std::optional<QMatrix>& cokernel = std::nullopt);

/// df - dg : TA ⊕ TB → TC is onto (decided by exact rank).
bool transverse(const QMatrix& df, const QMatrix& dg);

/// T(A ×_C B) ⊂ TA ⊕ TB oriented so that
/// coker df ⊕ T(A ×_C B) ⊕ coker dg = ker df ⊕ TC ⊕ ker dg.
/// Throws NotTransverse.
OrientedSpace fiber_product_orientation(const QMatrix& df, const QMatrix& dg);

/// Sign between B ×_C A (moved into TA ⊕ TB) and A ×_C B.
int swap_sign(const QMatrix& df, const QMatrix& dg);

/// Sign of T(A ×_C B) ⊕ TC = T(A × B) with the normal bundle identified
/// with TC through df - dg.
int normal_bundle_sign(const QMatrix& df, const QMatrix& dg);

/// For transverse injective df: TA → TM, dg: TB → TM, the sign of
/// T(A∩B) ⊕ N_B ⊕ N_A against TM, normals oriented by TA ⊕ N_A = TM.
int intersection_sign(const QMatrix& df, const QMatrix& dg);

/// The three parenthesizations of A ×_{M1} B ×_{M2} C for f: A → M1,
/// g: B → M1, h: B → M2, k: C → M2, compared inside TA ⊕ TB ⊕ TC.
struct AssociativityReport {
  int left_vs_middle = 0;   // A ×(B ×C) against (A ×B) ×_B (B ×C)
  int right_vs_middle = 0;  // (A ×B) ×C against (A ×B) ×_B (B ×C)
  bool agrees() const { return left_vs_middle == 1 && right_vs_middle == 1; }
  std::string to_text() const;
};

AssociativityReport associativity_check(const QMatrix& f, const QMatrix& g, const QMatrix& h, const QMatrix& k);

/// Follows the orientation along the straight path from (df0, dg0) to
/// (df1, dg1), comparing consecutive oriented tangent spaces, which are
/// refined until they are close. Returns nullopt when transversality fails
/// somewhere on the path (decided exactly), else whether no orientation
/// jump was seen.
std::optional<bool> continuity_check(const QMatrix& df0, const QMatrix& dg0, const QMatrix& df1, const QMatrix& dg1,
                                     int samples = 4);

}  // namespace exdr
