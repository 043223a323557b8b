#include <random>

#include "doctest.h"
#include "exdr/fan.hpp"
#include "exdr/polytope.hpp"
#include "support.hpp"

using namespace exdr;
using namespace testing_support;

namespace {

Polytope interval(long a, long b) { return Polytope::box({{Rational(a), Rational(b)}}); }

}  // namespace

TEST_SUITE("polytope") {
  TEST_CASE("basic shapes") {
    const Polytope i = interval(0, 1);
    CHECK(i.vertices().size() == 2);
    CHECK(i.is_bounded());
    CHECK(i.dimension() == 1);

    const Polytope half = Polytope::box({{Rational(0), std::nullopt}});
    CHECK(half.vertices().size() == 1);
    CHECK(half.rays().size() == 1);
    CHECK(unbounded_span(half).k == 1);

    const Polytope line = Polytope::whole_space(1);
    CHECK_FALSE(line.is_pointed());
    CHECK(contains_lines(line));
    CHECK(unbounded_span(line).k == 1);

    const Polytope q = Polytope::positive_orthant(2);
    CHECK(q.rays().size() == 2);
    CHECK(face_lattice(q).f_vector() == std::vector<std::size_t>{1, 2, 1});

    CHECK(Polytope(1, {{{BigInt(1)}, Rational(1)}, {{BigInt(-1)}, Rational(0)}}).is_empty());
    CHECK_THROWS_AS(face_lattice(Polytope(1, {{{BigInt(1)}, Rational(1)}, {{BigInt(-1)}, Rational(0)}})), Error);
  }

  TEST_CASE("open faces only affect completeness") {
    Polytope p(1, {{{BigInt(1)}, Rational(0), true}, {{BigInt(-1)}, Rational(-1)}});
    CHECK_FALSE(is_complete(p));
    CHECK(p.vertices().size() == 2);
    CHECK(is_complete(interval(0, 1)));
  }

  TEST_CASE("random polyhedra: generators, recession span and Euler relation") {
    std::mt19937 g(21);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t m = uniform(g, 1, 3);
      const RandomPolyhedron rp = random_polyhedron(g, m);
      const Polytope& p = rp.polytope;
      REQUIRE_FALSE(p.is_empty());
      CHECK(unbounded_span(p).k == rp.k);
      for (const auto& v : p.vertices()) CHECK(p.contains(v));
      for (const auto& r : p.rays()) CHECK(p.recedes_along(r));
      if (p.is_pointed()) {
        const auto f = face_lattice(p).f_vector();
        long euler = 0;
        for (std::size_t i = 0; i < f.size(); ++i) euler += (i % 2 ? -1 : 1) * static_cast<long>(f[i]);
        CHECK(euler == (p.is_bounded() ? 1 : 0));
      }
    }
  }

  TEST_CASE("face direction lattices") {
    // The triangle with vertices 0, (2,0), (0,1): its bottom edge has
    // direction lattice Z e1 even though the edge has lattice length 2.
    const Polytope t = Polytope::from_generators(2, {{0, 0}, {2, 0}, {0, 1}}, {});
    const FaceLattice fl = face_lattice(t);
    bool found = false;
    for (const Face& f : fl.faces) {
      if (f.dimension != 1) continue;
      const QVector mid = relative_interior_point(t, f);
      if (mid[1] != 0) continue;
      found = true;
      const SaturatedLattice l = face_direction_lattice(t, f);
      CHECK(l.rank == 1);
      CHECK(abs(l.basis(0, 0)) == 1);
      CHECK(l.basis(0, 1) == 0);
    }
    CHECK(found);
  }
}

TEST_SUITE("polytope") {
  TEST_CASE("fans: completeness, smoothness and Betti numbers") {
    for (const char* name : {"p1", "p2", "p1xp1", "f1"}) {
      CAPTURE(name);
      const std::string text = read_file(data_path(std::string("fans/") + name + ".fan"));
      const Fan fan = parse_fan(text);
      CHECK(fan.is_complete());
      CHECK(fan.is_smooth());
      CHECK(danilov_betti(fan) == small_toric_betti(text));
    }
    const Fan half(1, {{{BigInt(1)}}});
    CHECK_FALSE(half.is_complete());
    CHECK_THROWS_AS(danilov_betti(half), Error);
  }
}
