#include <random>

#include "doctest.h"
#include "exdr/chart_model.hpp"
#include "exdr/integer_matrix.hpp"
#include "exdr/linalg.hpp"
#include "support.hpp"

using namespace exdr;
using namespace testing_support;

namespace {

void check_formula(const ChartSignature& sig, std::size_t k) {
  const ChartModel model = chart_cohomology(sig);
  CHECK(model.k == k);
  REQUIRE(model.betti.size() == sig.total_dim() + 1);
  for (std::size_t j = 0; j < model.betti.size(); ++j)
    CHECK(model.betti[j] == choose(static_cast<long>(sig.m - k), static_cast<long>(j)));
}

}  // namespace

TEST_SUITE("chart_model") {
  TEST_CASE("Betti numbers are C(m-k, j) on 200 random polyhedra") {
    std::mt19937 g(31);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t m = uniform(g, 0, 4), n = uniform(g, 0, 2);
      const RandomPolyhedron rp = random_polyhedron(g, m);
      check_formula(ChartSignature(n, m, rp.polytope), rp.k);
    }
  }

  TEST_CASE("fixtures") {
    const auto interval = Polytope::box({{Rational(0), Rational(1)}});
    const auto half = Polytope::box({{Rational(0), std::nullopt}});
    check_formula(ChartSignature(0, 1, interval), 0);
    check_formula(ChartSignature(0, 1, half), 1);
    check_formula(ChartSignature(0, 2, Polytope::positive_orthant(2)), 2);
    check_formula(ChartSignature(1, 2, product(interval, half)), 1);
    check_formula(ChartSignature(2, 3, product(product(interval, interval), Polytope::whole_space(1))), 1);
    // T^1 over [0,1] has the cohomology of C*.
    CHECK(chart_cohomology(ChartSignature(0, 1, interval)).betti == std::vector<long>{1, 1, 0});
  }

  TEST_CASE("generators annihilate the unbounded span") {
    std::mt19937 g(32);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t m = uniform(g, 1, 4);
      const RandomPolyhedron rp = random_polyhedron(g, m);
      const ChartModel model = chart_cohomology(ChartSignature(0, m, rp.polytope));
      for (std::size_t i = 0; i < model.generators.rows(); ++i) {
        for (const auto& r : rp.polytope.rays()) {
          BigInt s = 0;
          for (std::size_t j = 0; j < m; ++j) s += model.generators(i, j) * r[j];
          CHECK(s == 0);
        }
      }
    }
  }

  TEST_CASE("compact model dimensions are reversed") {
    const auto interval = Polytope::box({{Rational(0), Rational(1)}});
    const CompactModel c = chart_compact_cohomology(ChartSignature(0, 1, interval));
    CHECK(c.betti == std::vector<long>{0, 1, 1});
    const CompactModel h = chart_compact_cohomology(ChartSignature(0, 1, Polytope::box({{Rational(0), std::nullopt}})));
    CHECK(h.betti == std::vector<long>{0, 0, 1});
    CHECK_THROWS_AS(chart_compact_cohomology(ChartSignature(0, 1, Polytope::whole_space(1))), Error);
  }

  TEST_CASE("exterior powers are functorial (Cauchy-Binet)") {
    std::mt19937 g(33);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t a = uniform(g, 0, 4), b = uniform(g, 0, 4), c = uniform(g, 0, 4);
      const QMatrix s = random_matrix(g, a, b), t = random_matrix(g, b, c);
      for (std::size_t j = 0; j <= 4; ++j) CHECK(exterior_power(s * t, j) == exterior_power(s, j) * exterior_power(t, j));
    }
  }

  TEST_CASE("restriction along a face") {
    // [0,inf) restricted to the vertex {0}: the generator dθ appears.
    const ChartModel source = chart_cohomology(ChartSignature(0, 1, Polytope::box({{Rational(0), std::nullopt}})));
    const ChartModel target = chart_cohomology(ChartSignature(0, 1, Polytope::box({{Rational(0), Rational(1)}})));
    const RestrictionMap r = restriction_map(source, target, IntMatrix::identity(1));
    CHECK(r.source_h1 == 0);
    CHECK(r.target_h1 == 1);
    CHECK_THROWS_AS(restriction_map(target, source, IntMatrix::identity(1)), Error);
    CHECK_THROWS_AS(restriction_map(source, target, IntMatrix::identity(2)), Error);
  }
}
