#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exdr/cover.hpp"

namespace exdr {

/// Total complex of the Čech double complex with constant-form chart
/// models as coefficients (the column differential vanishes).
struct TotalComplex {
  struct Block {
    IdSet cell;
    std::size_t p = 0;       // Čech degree, |cell| - 1
    std::size_t q = 0;       // form degree
    std::size_t offset = 0;  // position inside C^{p+q}
    std::size_t size = 0;    // C(h1(cell), q)
  };
  std::vector<std::size_t> dims;          // dim C^r
  std::vector<std::vector<Block>> blocks; // blocks[r]
  std::vector<QMatrix> differentials;     // differentials[r]: C^r -> C^{r+1}

  long euler_characteristic() const;
};

TotalComplex build_total_complex(const CoverManifest& manifest);

/// The compact-support counterpart: pieces H^j_c(U_I) in total degree
/// j - p, extension maps adjoint to the restrictions.
struct CompactComplex {
  int min_degree = 0;                     // degree of dims[0]
  std::vector<std::size_t> dims;
  std::vector<QMatrix> differentials;     // differentials[i]: degree min+i -> min+i+1
};

CompactComplex build_compact_complex(const CoverManifest& manifest);

struct BettiTable {
  std::size_t dimension = 0;               // manifold dimension N
  std::vector<long> betti;                 // b_0..b_N
  std::optional<std::vector<long>> compact;  // c_0..c_N

  std::string to_text() const;
  /// "dimension N", then "betti <deg> <value>" for the nonzero entries
  /// (and "cbetti" for the compact row).
  std::string to_machine() const;
};

/// Exact rank, fraction-free when the matrix is integral.
std::size_t exact_rank(const QMatrix& m);

/// Betti numbers via b_r = dim ker D_r - rank D_{r-1}. Throws
/// UnsupportedGluing for GluingClass::General.
BettiTable total_betti(const CoverManifest& manifest);

/// Compact-support Betti numbers; throws DualityUnavailable when some cell
/// polytope contains a line or has an open face.
BettiTable total_compact_betti(const CoverManifest& manifest);

struct DualityReport {
  BettiTable table;
  bool passed = true;
  std::vector<std::string> violations;
};

/// Checks c_j = b_{N-j} between the two independently assembled complexes.
DualityReport pd_symmetry_check(const CoverManifest& manifest);

/// Rational cohomology of the nerve of the cover, computed directly from
/// simplicial cochains (ignores chart models entirely).
std::vector<long> nerve_cohomology(const CoverManifest& manifest);

}  // namespace exdr
