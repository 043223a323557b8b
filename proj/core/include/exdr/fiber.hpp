#pragma once

#include <string>
#include <vector>

#include "exdr/integrate.hpp"

namespace exdr {

/// Projection R^n x T^m_Q -> R^{n'} x T^{m'}_P forgetting some coordinates.
struct CoordinateDrop {
  std::vector<std::size_t> x;      // dropped real coordinates (0-based)
  std::vector<std::size_t> torus;  // dropped torus coordinates (0-based)
};

struct FiberProjection {
  ChartSignature total;
  ChartSignature base;  // P is the image of Q
  CoordinateDrop drop;
  std::vector<int> to_base;           // total coordinate index -> base index, or -1 on the fiber
  std::vector<int> fiber;             // total coordinate indices along the fiber, increasing
  int orientation = 1;                // sign of (base coordinates, fiber coordinates) against the total order
  std::vector<int> corner_image;      // vertex of Q -> vertex of P (-1 when not over a vertex)
};

/// Builds the projection and checks that it is surjective on integral
/// vectors: over every face of Q the projected direction lattice equals the
/// direction lattice of the face of P it lands in. Throws
/// IntegralVectorSurjectivityFailure otherwise.
FiberProjection make_projection(const ChartSignature& total, CoordinateDrop drop);

/// Integration along the fibers. Fibers carry the orientation for which
/// (base volume) ∧ (fiber volume) is the total volume. Factors that only
/// involve fiber coordinates are integrated once; the rest become
/// quadrature-backed coefficients.
FormExpr fiber_integrate(const FormExpr& w, const FiberProjection& f, const QuadratureSpec& spec);

FormExpr pullback(const FormExpr& alpha, const FiberProjection& f);

struct AdjunctionReport {
  Estimate base_side;   // ∫_B α ∧ f_!θ
  Estimate total_side;  // ∫_A f*α ∧ θ
  double difference = 0.0;

  bool agrees(double tolerance) const { return difference <= tolerance; }
  std::string to_text() const;
};

AdjunctionReport adjunction_check(const FormExpr& alpha, const FormExpr& theta, const FiberProjection& f,
                                  const QuadratureSpec& spec);

}  // namespace exdr
