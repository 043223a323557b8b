#include <cmath>
#include <random>

#include "doctest.h"
#include "exdr/expr.hpp"
#include "exdr/form_parser.hpp"
#include "support.hpp"

using namespace exdr;
using namespace testing_support;

TEST_SUITE("expr") {
  TEST_CASE("derivatives agree with central differences") {
    std::mt19937 g(41);
    const std::vector<int> vars{0, 1, 2};
    for (int trial = 0; trial < 300; ++trial) {
      const Expr e = random_expr(g, vars, 3);
      const int v = uniform(g, 0, 2);
      const Expr de = e.derivative(v);
      std::vector<double> p = random_point(g, 3);
      const double h = 1e-5;
      auto plus = p, minus = p;
      plus[v] += h;
      minus[v] -= h;
      const double fd = (e.eval(plus) - e.eval(minus)) / (2 * h);
      CHECK(de.eval(p) == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
    }
  }

  TEST_CASE("bump and step profiles") {
    const Expr t = Expr::var(0);
    const Expr b = Expr::bump(-1, 1, t);
    const Expr s = Expr::step(0, 1, t);
    auto at = [](const Expr& e, double x) { return e.eval(std::vector<double>{x}); };
    CHECK(at(b, 0.0) == doctest::Approx(1.0));
    CHECK(at(b, 1.0) == 0.0);
    CHECK(at(b, -3.0) == 0.0);
    CHECK(at(s, -0.5) == 0.0);
    CHECK(at(s, 1.5) == 1.0);
    CHECK(at(s, 0.5) == doctest::Approx(0.5));
    for (int order = 1; order <= 3; ++order) {
      const double h = 1e-4;
      for (double x : {-0.7, 0.1, 0.55}) {
        const double fd = (bump_derivative(-1, 1, x + h, order - 1) - bump_derivative(-1, 1, x - h, order - 1)) / (2 * h);
        CHECK(bump_derivative(-1, 1, x, order) == doctest::Approx(fd).epsilon(1e-4));
      }
    }
  }

  TEST_CASE("printing and parsing round trip numerically") {
    std::mt19937 g(42);
    const ChartCoordinates c{1, 1};
    const auto names = c.names();
    for (int trial = 0; trial < 200; ++trial) {
      const Expr e = random_expr(g, {0, 1, 2}, 3);
      const std::string text = e.to_string(names);
      CAPTURE(text);
      const Expr back = parse_scalar(text, c);
      const auto p = random_point(g, 3);
      CHECK(back.eval(p) == doctest::Approx(e.eval(p)).epsilon(1e-9));
    }
  }

  TEST_CASE("substitution") {
    const Expr x = Expr::var(0), y = Expr::var(1);
    const Expr e = sin(x) * y;
    const Expr s = e.substitute([&](int v) { return v == 0 ? y + Expr(1.0) : Expr(2.0); });
    CHECK(s.eval(std::vector<double>{0.0, 0.3}) == doctest::Approx(std::sin(1.3) * 2.0));
    CHECK(s.variables() == std::set<int>{1});
  }
}
