#include "doctest.h"
#include "exdr/family.hpp"

using namespace exdr;

namespace {

const auto unit = Polytope::box({{Rational(0), Rational(1)}});
const auto half = Polytope::box({{Rational(0), std::nullopt}});

IntMatrix row(std::initializer_list<long> values) {
  IntMatrix m(1, values.size());
  std::size_t j = 0;
  for (long v : values) m(0, j++) = v;
  return m;
}

void expect_not_a_family(const ChartSignature& base, const ChartSignature& total, const IntMatrix& f) {
  try {
    family_h1_check(base, total, f);
    FAIL("expected NotAFamily");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAFamily);
  }
}

}  // namespace

TEST_SUITE("family") {
  TEST_CASE("product family over R") {
    const ChartSignature base(1, 0, Polytope::whole_space(0));
    const ChartSignature total(1, 1, unit);
    const FamilyReport r = family_h1_check(base, total, IntMatrix(0, 1));
    CHECK(r.passed);
    CHECK(r.base_h1 == 0);
    CHECK(r.fiber_h1 == 1);
    CHECK(r.total_h1 == 1);
  }

  TEST_CASE("square over the interval") {
    const FamilyReport r = family_h1_check(ChartSignature(0, 1, unit), ChartSignature(0, 2, product(unit, unit)), row({1, 0}));
    CHECK(r.passed);
    CHECK(r.base_h1 == 1);
    CHECK(r.fiber_h1 == 1);
    CHECK(r.total_h1 == 2);
    CHECK(r.fiber_unbounded_rank == 0);
  }

  TEST_CASE("quadrant over the half line") {
    const FamilyReport r = family_h1_check(ChartSignature(0, 1, half), ChartSignature(0, 2, product(half, half)), row({1, 0}));
    CHECK(r.passed);
    CHECK(r.base_h1 == 0);
    CHECK(r.fiber_h1 == 0);
    CHECK(r.total_h1 == 0);
    CHECK(r.fiber_unbounded_rank == 1);
  }

  TEST_CASE("refusals") {
    // not surjective on lattices
    expect_not_a_family(ChartSignature(0, 1, unit), ChartSignature(0, 2, product(unit, unit)), row({2, 0}));
    // Q leaves P
    expect_not_a_family(ChartSignature(0, 1, unit), ChartSignature(0, 2, product(half, unit)), row({1, 0}));
    // a ray of P is not covered
    expect_not_a_family(ChartSignature(0, 1, half), ChartSignature(0, 2, product(unit, half)), row({1, 0}));
  }
}
