#include <cmath>

#include "doctest.h"
#include "exdr/errors.hpp"
#include "exdr/quadrature.hpp"

using namespace exdr;

TEST_SUITE("quadrature") {
  TEST_CASE("finite intervals") {
    auto e = integrate_interval([](double x) { return Estimate{std::sin(x), 0.0}; }, 0.0, M_PI, 1e-10, 30);
    CHECK(e.value == doctest::Approx(2.0).epsilon(1e-11));
    auto poly = integrate_interval([](double x) { return Estimate{x * x * x, 0.0}; }, -1.0, 2.0, 1e-12, 30);
    CHECK(poly.value == doctest::Approx(3.75).epsilon(1e-12));
  }

  TEST_CASE("axes") {
    QuadratureSpec s;
    s.tolerance = 1e-9;
    // ∫ e^{r - e^r} dr = ∫_0^∞ e^{-u} du = 1
    auto rad = integrate_axis([](double r) { return Estimate{std::exp(r - std::exp(r)), 0.0}; }, Axis::Radial, 1e-9, s);
    CHECK(std::abs(rad.value - 1.0) < 1e-8);
    auto line = integrate_axis([](double x) { return Estimate{std::exp(-x * x), 0.0}; }, Axis::Line, 1e-9, s);
    CHECK(std::abs(line.value - std::sqrt(M_PI)) < 1e-8);
    auto half = integrate_axis([](double x) { return Estimate{std::exp(x), 0.0}; }, Axis::NegativeHalf, 1e-9, s);
    CHECK(std::abs(half.value - 1.0) < 1e-8);
    auto ang = integrate_axis([](double t) { return Estimate{1.0 + std::cos(t) * std::cos(t), 0.0}; }, Axis::Angle, 1e-9, s);
    CHECK(std::abs(ang.value - 3.0 * M_PI) < 1e-9);
  }

  TEST_CASE("non-decaying integrands are reported") {
    QuadratureSpec s;
    CHECK_THROWS_AS(integrate_axis([](double) { return Estimate{1.0, 0.0}; }, Axis::Radial, 1e-6, s), Error);
    try {
      integrate_axis([](double) { return Estimate{1.0, 0.0}; }, Axis::Line, 1e-6, s);
      FAIL("expected divergence");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DivergenceSuspected);
    }
  }
}
