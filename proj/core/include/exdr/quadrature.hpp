#pragma once

#include <functional>
#include <string>

namespace exdr {

struct QuadratureSpec {
  double tolerance = 1e-6;   // absolute, for the whole integral
  int max_depth = 20;        // bisection depth per panel / doublings per angle
  int min_panels = 48;       // panels per side on infinite axes before tail checks
  int max_panels = 1500;     // per side; hitting it means the integrand does not decay
  int periodic_start = 16;   // initial trapezoid nodes on an angle
};

/// Value with an error bound.
struct Estimate {
  double value = 0.0;
  double bound = 0.0;

  Estimate& operator+=(const Estimate& o) {
    value += o.value;
    bound += o.bound;
    return *this;
  }
};

Estimate operator*(const Estimate& a, const Estimate& b);
std::string to_machine(const Estimate& e);  // "value <v> bound <b>"

/// Integrand returning its own value together with an error bound (the
/// bound is integrated alongside the value; use 0 for exact integrands).
using Integrand = std::function<Estimate(double)>;

/// Adaptive Gauss–Kronrod (7/15) on [a, b]; throws DivergenceSuspected
/// when `max_depth` bisections do not reach the tolerance.
Estimate integrate_interval(const Integrand& f, double a, double b, double tol, int max_depth);

enum class Axis {
  Angle,           // [0, 2π), periodic trapezoid with doubling
  Radial,          // r in R via u = e^r: geometric panels [2^k, 2^{k+1}] in u
  Line,            // x in R, unit panels outward from 0
  NegativeHalf,    // x in (-∞, 0]
};

/// Integral over one axis. Infinite axes are cut into panels that are
/// summed outward until they decay; the tail is bounded geometrically from
/// the last panels. Throws DivergenceSuspected when no decay is seen.
Estimate integrate_axis(const Integrand& f, Axis axis, double tol, const QuadratureSpec& spec);

}  // namespace exdr
