#pragma once

#include <string>
#include <utility>
#include <vector>

#include "exdr/form.hpp"
#include "exdr/quadrature.hpp"

namespace exdr {

/// Integral of a scalar expression over the listed coordinates, with the
/// remaining coordinates fixed at `point`. Products of factors in disjoint
/// variables are integrated separately; coordinates the expression does not
/// depend on contribute 2π (angles) or DivergenceSuspected (lines).
Estimate integrate_scalar(const Expr& f, const std::vector<std::pair<int, Axis>>& axes, std::vector<double> point,
                          const QuadratureSpec& spec);

/// Axis kind of every coordinate of a chart; x_1 becomes NegativeHalf when
/// the chart is the half-space x_1 <= 0.
std::vector<std::pair<int, Axis>> chart_axes(const ChartCoordinates& c, bool half_space);

/// Number of zero-dimensional strata the form is integrated over.
std::size_t corner_count(const FormExpr& w, const ChartSignature& sig);

/// ∫ω over the smooth strata of R^n x T^m_P (one copy of (C*)^m x R^n per
/// vertex of P) in the standard orientation. ω must have top degree.
Estimate integrate(const FormExpr& w, const ChartSignature& sig, const QuadratureSpec& spec, bool half_space = false);

struct StokesReport {
  Estimate interior;  // ∫_M dω
  Estimate boundary;  // ∫_∂M ω
  double discrepancy = 0.0;
  AdmissibilityReport admissibility;

  bool hypothesis_violated() const { return !admissibility.admissible(); }
  /// Discrepancy within the tolerance plus both error bounds.
  bool agrees(double tolerance) const { return discrepancy <= tolerance + interior.bound + boundary.bound; }
  std::string to_text() const;
};

/// Compares ∫_M dω with ∫_∂M ω. With `half_space` the chart is
/// (-∞,0] x R^{n-1} x T^m_P, whose boundary x_1 = 0 carries the orientation
/// that puts the outward normal ∂/∂x_1 first.
StokesReport stokes_check(const FormExpr& w, const ChartSignature& sig, bool half_space, const QuadratureSpec& spec);

}  // namespace exdr
