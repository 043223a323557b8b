#include "exdr/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "exdr/errors.hpp"

namespace exdr {

Estimate operator*(const Estimate& a, const Estimate& b) {
  return {a.value * b.value, std::abs(a.value) * b.bound + std::abs(b.value) * a.bound + a.bound * b.bound};
}

std::string to_machine(const Estimate& e) {
  std::ostringstream os;
  os.precision(17);
  os << "value " << e.value << " bound " << e.bound;
  return os.str();
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule {
  double kronrod = 0.0;
  double gauss = 0.0;
  double inner_bound = 0.0;  // integral of the integrand's own bounds
};

Rule gauss_kronrod(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  Rule r;
  for (std::size_t i = 0; i < 8; ++i) {
    const double x = kXgk[i] * h;
    const Estimate lo = f(c - x);
    const Estimate hi = i == 7 ? Estimate{} : f(c + x);
    const double sum = lo.value + hi.value;
    r.kronrod += kWgk[i] * sum;
    r.inner_bound += kWgk[i] * (lo.bound + hi.bound);
    if (i % 2 == 1) r.gauss += kWg[i / 2] * sum;
  }
  r.kronrod *= h;
  r.gauss *= h;
  r.inner_bound *= std::abs(h);
  return r;
}

Estimate adapt(const Integrand& f, double a, double b, double tol, int depth_left) {
  const Rule r = gauss_kronrod(f, a, b);
  const double err = std::abs(r.kronrod - r.gauss);
  if (err <= tol || err <= 1e-15 * std::abs(r.kronrod)) return {r.kronrod, err + r.inner_bound};
  if (depth_left <= 0) {
    std::ostringstream os;
    os << "adaptive quadrature did not converge on [" << a << ", " << b << "] (error estimate " << err << ")";
    throw Error(ErrorKind::DivergenceSuspected, os.str());
  }
  const double mid = 0.5 * (a + b);
  Estimate out = adapt(f, a, mid, 0.5 * tol, depth_left - 1);
  out += adapt(f, mid, b, 0.5 * tol, depth_left - 1);
  return out;
}

Estimate periodic(const Integrand& f, double tol, const QuadratureSpec& spec) {
  const double two_pi = 2.0 * std::numbers::pi;
  std::size_t n = static_cast<std::size_t>(std::max(2, spec.periodic_start));
  double sum = 0.0, bound_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Estimate e = f(two_pi * static_cast<double>(j) / static_cast<double>(n));
    sum += e.value;
    bound_sum += e.bound;
  }
  double previous = two_pi * sum / static_cast<double>(n);
  const int doublings = std::min(spec.max_depth, 12);
  for (int level = 0; level < doublings; ++level) {
    for (std::size_t j = 0; j < n; ++j) {
      const Estimate e = f(two_pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n));
      sum += e.value;
      bound_sum += e.bound;
    }
    n *= 2;
    const double current = two_pi * sum / static_cast<double>(n);
    const double diff = std::abs(current - previous);
    if (diff <= tol) return {current, diff + two_pi * bound_sum / static_cast<double>(n)};
    previous = current;
  }
  throw Error(ErrorKind::DivergenceSuspected, "periodic quadrature did not converge");
}

// Sum of panels [k h, (k+1) h] * direction for k = 0, 1, ... until decay.
Estimate outward(const Integrand& f, double h, double direction, double tol, const QuadratureSpec& spec) {
  const double panel_tol = tol / (4.0 * spec.min_panels);
  Estimate total;
  std::vector<double> sizes;
  for (int k = 0;; ++k) {
    double a = direction * k * h, b = direction * (k + 1) * h;
    if (a > b) std::swap(a, b);
    const Estimate e = adapt(f, a, b, panel_tol, spec.max_depth);
    total += e;
    sizes.push_back(std::abs(e.value) + e.bound);
    if (k + 1 < spec.min_panels) continue;
    const double s2 = sizes[sizes.size() - 3], s1 = sizes[sizes.size() - 2], s0 = sizes.back();
    if (s0 == 0.0 && s1 == 0.0 && s2 == 0.0) return total;
    if (s1 > 0.0 && s2 > 0.0) {
      const double q = std::max(s0 / s1, s1 / s2);
      if (q < 0.95) {
        const double tail = s0 * q / (1.0 - q);
        if (tail <= 0.01 * tol) {
          total.bound += tail;
          return total;
        }
      }
    }
    if (k + 1 >= spec.max_panels) {
      std::ostringstream os;
      os << "integrand does not decay: panel " << k + 1 << " still contributes " << e.value;
      throw Error(ErrorKind::DivergenceSuspected, os.str());
    }
  }
}

}  // namespace

Estimate integrate_interval(const Integrand& f, double a, double b, double tol, int max_depth) {
  return adapt(f, a, b, tol, max_depth);
}

Estimate integrate_axis(const Integrand& f, Axis axis, double tol, const QuadratureSpec& spec) {
  switch (axis) {
    case Axis::Angle: return periodic(f, tol, spec);
    case Axis::Radial: {
      // Uniform panels of width ln 2 in r are the dyadic panels in u = e^r.
      Estimate e = outward(f, std::numbers::ln2, 1.0, 0.5 * tol, spec);
      e += outward(f, std::numbers::ln2, -1.0, 0.5 * tol, spec);
      return e;
    }
    case Axis::Line: {
      Estimate e = outward(f, 1.0, 1.0, 0.5 * tol, spec);
      e += outward(f, 1.0, -1.0, 0.5 * tol, spec);
      return e;
    }
    case Axis::NegativeHalf: return outward(f, 1.0, -1.0, tol, spec);
  }
  return {};
}

}  // namespace exdr
