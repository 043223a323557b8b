#include <cmath>

#include "doctest.h"
#include "exdr/fiber.hpp"
#include "exdr/form_parser.hpp"

using namespace exdr;

TEST_SUITE("fiber") {
  TEST_CASE("projection of a plane onto a line") {
    const ChartSignature tot(2, 0, Polytope::whole_space(0));
    const FiberProjection f = make_projection(tot, {{1}, {}});
    const FormExpr theta = parse_form("exp(-x1^2-x2^2) dx2", {2, 0});
    const FormExpr pushed = fiber_integrate(theta, f, QuadratureSpec{});
    REQUIRE(pushed.degree == 0);
    const double at = pushed.eval(std::vector<double>{0.5}).at(Monomial{});
    CHECK(std::abs(at - std::sqrt(M_PI) * std::exp(-0.25)) < 1e-7);
    const FormExpr alpha = parse_form("cos(x) dx", {1, 0});
    const AdjunctionReport r = adjunction_check(alpha, theta, f, QuadratureSpec{});
    // ∫ cos(x) e^{-x^2} dx ∫ e^{-y^2} dy = π e^{-1/4}
    CHECK(std::abs(r.base_side.value - M_PI * std::exp(-0.25)) < 1e-6);
    CHECK(r.agrees(1e-6));
  }

  TEST_CASE("forgetting the torus factor of T_[0,1] x R") {
    const ChartSignature tot(1, 1, Polytope::box({{Rational(0), Rational(1)}}));
    const FiberProjection f = make_projection(tot, {{}, {0}});
    FormExpr theta = parse_form("exp(-x^2)*bump(-1,2)(r) dr∧dθ∧dx", {1, 1});
    theta.corner = 0;
    const AdjunctionReport r = adjunction_check(parse_form("cos(x)", {1, 0}), theta, f, QuadratureSpec{});
    CHECK(r.agrees(1e-6));
  }

  TEST_CASE("forgetting one torus coordinate of a quadrant strip") {
    const ChartSignature tot(0, 2, Polytope::box({{Rational(0), Rational(1)}, {Rational(0), std::nullopt}}));
    const FiberProjection f = make_projection(tot, {{}, {1}});
    const FormExpr theta = parse_form("exp(r2-exp(r2))*bump(-1,1)(r1)*(2+sin(θ1)) dr2∧dθ2", {0, 2});
    const FormExpr alpha = parse_form("bump(-2,1)(r) dr∧dθ", {0, 1});
    CHECK(adjunction_check(alpha, theta, f, QuadratureSpec{}).agrees(1e-6));
  }

  TEST_CASE("surjectivity on integral vectors is required") {
    // the ray (2,1) projects to 2·Z in the first coordinate
    const ChartSignature tot(0, 2, Polytope::from_generators(2, {{Rational(0), Rational(0)}}, {{BigInt(2), BigInt(1)}}));
    try {
      make_projection(tot, {{}, {1}});
      FAIL("expected a surjectivity failure");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::IntegralVectorSurjectivityFailure);
    }
    CHECK_NOTHROW(make_projection(tot, {{}, {0}}));
  }
}
