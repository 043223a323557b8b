#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exdr/chart_model.hpp"
#include "exdr/expr.hpp"

namespace exdr {

/// Coordinate layout of R^n x T^m_P. Index i < n is x_{i+1}; the torus
/// coordinate z_i (0-based) contributes r_i at n + 2i and θ_i at n + 2i + 1.
/// The same indices label the basis one-forms dx, dr, dθ, and the standard
/// orientation is the index order dx_1 … dx_n dr_1 dθ_1 … dr_m dθ_m.
struct ChartCoordinates {
  std::size_t n = 0;
  std::size_t m = 0;

  std::size_t dimension() const noexcept { return n + 2 * m; }
  int x(std::size_t j) const { return static_cast<int>(j); }
  int r(std::size_t i) const { return static_cast<int>(n + 2 * i); }
  int theta(std::size_t i) const { return static_cast<int>(n + 2 * i + 1); }
  bool is_angle(int index) const { return index >= static_cast<int>(n) && (index - static_cast<int>(n)) % 2 == 1; }
  bool is_radial(int index) const { return index >= static_cast<int>(n) && (index - static_cast<int>(n)) % 2 == 0; }
  /// Torus index of an r or θ coordinate.
  std::size_t torus_index(int index) const { return static_cast<std::size_t>(index - static_cast<int>(n)) / 2; }

  /// "x", "r", "θ" when there is a single coordinate of that kind, else
  /// numbered names starting at 1.
  std::vector<std::string> names() const;
};

using Monomial = std::vector<int>;  // strictly increasing one-form indices

/// Differential form with expression coefficients, homogeneous of `degree`.
/// `corner`, when set, restricts the form to the stratum over that vertex of
/// P (an index into Polytope::vertices()); otherwise the same coefficient is
/// used in the local coordinates of every corner.
struct FormExpr {
  ChartCoordinates coords;
  std::size_t degree = 0;
  std::map<Monomial, Expr> terms;
  std::optional<std::size_t> corner;

  FormExpr() = default;
  FormExpr(ChartCoordinates c, std::size_t deg) : coords(c), degree(deg) {}

  static FormExpr scalar(ChartCoordinates c, Expr f);
  static FormExpr basis(ChartCoordinates c, int index);

  bool is_zero() const { return terms.empty(); }
  /// Adds f * e_mono (mono in any order; sign normalized).
  void add(Monomial mono, const Expr& f);
  Expr coefficient(const Monomial& mono) const;

  std::map<Monomial, double> eval(std::span<const double> point) const;
  std::string to_string() const;

  friend FormExpr operator+(const FormExpr& a, const FormExpr& b);
  friend FormExpr operator-(const FormExpr& a, const FormExpr& b);
  friend FormExpr operator*(const Expr& f, const FormExpr& a);
};

/// Sign of the permutation sorting `mono`, or 0 when an index repeats.
int sort_monomial(Monomial& mono);

FormExpr d(const FormExpr& w);
/// Throws DegreeOverflow when the degrees add up past the chart dimension.
FormExpr wedge(const FormExpr& a, const FormExpr& b);
/// Contraction with the constant vector field sum_i v[i] ∂_i.
FormExpr interior(const std::vector<double>& v, const FormExpr& w);
/// Pullback along the monomial map with exponent matrix A (m_src x m_tgt):
/// r ↦ A·r, θ ↦ A·θ, x unchanged. The result lives on (n, m_tgt).
FormExpr pullback_monomial(const FormExpr& w, const IntMatrix& a);

struct AdmissibilityFailure {
  std::string stratum;    // face description
  std::string condition;  // "integral vectors" or "tropical maps"
  std::string detail;
};

struct AdmissibilityReport {
  bool integral_vectors = true;  // vanishes on lattice directions u·∂r of every positive-dimensional stratum
  bool tropical_maps = true;     // also vanishes on u·∂θ in the limit at those strata
  std::vector<AdmissibilityFailure> failures;

  bool admissible() const { return integral_vectors && tropical_maps; }
  std::string to_text() const;
};

/// Checks the form near every stratum of positive tropical dimension, by
/// term inspection when that decides it and otherwise by sampling 100
/// pseudo-random points deep toward the stratum (tolerance 1e-9).
AdmissibilityReport check_admissible(const FormExpr& w, const ChartSignature& sig);

}  // namespace exdr
