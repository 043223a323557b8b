#include "doctest.h"
#include "exdr/cech.hpp"
#include "support.hpp"

using namespace exdr;
using namespace testing_support;

namespace {

CoverManifest load(const std::string& name) { return parse_manifest(read_file(data_path("manifests/" + name))); }

CoverManifest single_chart(Polytope p, std::size_t n = 0) {
  CoverManifest m;
  const std::size_t dim = p.ambient_dim();
  m.charts["u"] = ChartSignature(n, dim, std::move(p));
  return m;
}

ErrorKind first_issue(const CoverManifest& m) {
  const auto issues = validate_manifest(m);
  REQUIRE_FALSE(issues.empty());
  return issues.front().kind;
}

}  // namespace

TEST_SUITE("cech") {
  TEST_CASE("toric refinements match the toric Betti numbers") {
    for (const char* name : {"p1", "p2", "p1xp1", "f1"}) {
      CAPTURE(name);
      const CoverManifest m = load(std::string(name) + ".manifest");
      const auto expected = small_toric_betti(read_file(data_path(std::string("fans/") + name + ".fan")));
      CHECK(total_betti(m).betti == expected);
      // the same through a fresh refinement of the fan
      const Fan fan = parse_fan(read_file(data_path(std::string("fans/") + name + ".fan")));
      CHECK(total_betti(refinement_manifest(fan, fan.ambient_dim())).betti == expected);
    }
  }

  TEST_CASE("differentials square to zero and the Euler characteristic is consistent") {
    for (const char* name : {"p1", "p2", "p1xp1", "f1", "tetrahedron_quadrants", "interval", "square_times_line"}) {
      CAPTURE(name);
      const CoverManifest m = load(std::string(name) + ".manifest");
      const TotalComplex c = build_total_complex(m);
      for (std::size_t r = 0; r + 1 < c.differentials.size(); ++r)
        CHECK((c.differentials[r + 1] * c.differentials[r]).is_zero());
      long chi = 0;
      const auto b = total_betti(m).betti;
      for (std::size_t r = 0; r < b.size(); ++r) chi += (r % 2 ? -1 : 1) * b[r];
      CHECK(chi == c.euler_characteristic());
      const CompactComplex cc = build_compact_complex(m);
      for (std::size_t r = 0; r + 1 < cc.differentials.size(); ++r)
        CHECK((cc.differentials[r + 1] * cc.differentials[r]).is_zero());
    }
  }

  TEST_CASE("quadrant-class cover: the nerve decides") {
    const CoverManifest m = load("tetrahedron_quadrants.manifest");
    CHECK(total_betti(m).betti == std::vector<long>{1, 0, 1});
    CHECK(nerve_cohomology(m) == std::vector<long>{1, 0, 1});
  }

  TEST_CASE("single charts") {
    CHECK(total_betti(single_chart(Polytope::box({{Rational(0), Rational(1)}}))).betti == std::vector<long>{1, 1, 0});
    const auto half = Polytope::box({{Rational(0), std::nullopt}});
    CHECK(total_compact_betti(single_chart(half)).compact == std::vector<long>{0, 0, 1});
    CHECK_THROWS_AS(total_compact_betti(single_chart(Polytope::whole_space(1))), Error);
    const DualityReport r = pd_symmetry_check(single_chart(Polytope::box({{Rational(0), Rational(1)}})));
    CHECK(r.passed);
    CHECK(r.table.betti == std::vector<long>{1, 1, 0});
    CHECK(r.table.compact == std::vector<long>{0, 1, 1});
  }

  TEST_CASE("duality on every manifest fixture") {
    for (const char* name :
         {"p1", "p2", "p1xp1", "f1", "tetrahedron_quadrants", "interval", "half_line", "square_times_line"}) {
      CAPTURE(name);
      CHECK(pd_symmetry_check(load(std::string(name) + ".manifest")).passed);
    }
  }

  TEST_CASE("relabeling charts changes nothing") {
    const CoverManifest m = load("p2.manifest");
    const CoverManifest r = relabel(m, {{"c0", "z"}, {"c1", "a"}, {"c2", "m"}});
    CHECK(validate_manifest(r).empty());
    CHECK(total_betti(r).betti == total_betti(m).betti);
    CHECK(total_compact_betti(r).compact == total_compact_betti(m).compact);
  }

  TEST_CASE("validation") {
    CHECK(validate_manifest(single_chart(Polytope::positive_orthant(2))).empty());
    CHECK(first_issue(CoverManifest{}) == ErrorKind::InvalidManifest);

    CoverManifest mismatch = single_chart(Polytope::positive_orthant(1));
    mismatch.charts["v"] = ChartSignature(0, 2, Polytope::positive_orthant(2));
    CHECK(first_issue(mismatch) == ErrorKind::DimensionMismatch);

    // a triple overlap without one of its pairs
    CoverManifest tet = load("tetrahedron_quadrants.manifest");
    CoverManifest holes = tet;
    holes.overlaps.erase(IdSet{"a", "b"});
    bool nerve = false;
    for (const auto& issue : validate_manifest(holes)) nerve |= issue.kind == ErrorKind::InconsistentNerve;
    CHECK(nerve);

    CoverManifest general = tet;
    general.gluing = GluingClass::General;
    CHECK_THROWS_AS(total_betti(general), Error);
    try {
      total_betti(general);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedGluing);
    }

    CoverManifest not_quadrant = single_chart(Polytope::box({{Rational(0), Rational(1)}}));
    not_quadrant.gluing = GluingClass::QuadrantClass;
    CHECK(first_issue(not_quadrant) == ErrorKind::UnsupportedGluing);

    CoverManifest no_map = load("p1.manifest");
    no_map.overlaps.begin()->second.maps.erase("c0");
    CHECK(first_issue(no_map) == ErrorKind::GluingError);
  }
}
