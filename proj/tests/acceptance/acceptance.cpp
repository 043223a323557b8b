// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "exdr/cech.hpp"
#include "exdr/chart_model.hpp"
#include "exdr/family.hpp"
#include "exdr/fiber.hpp"
#include "exdr/form_parser.hpp"
#include "exdr/integrate.hpp"
#include "exdr/linalg.hpp"
#include "exdr/orientation.hpp"
#include "exdr/pairing.hpp"
#include "exdr/text_format.hpp"
#include "support.hpp"

using namespace exdr;
using namespace testing_support;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void fail(const std::string& why) {
    if (!note.str().empty()) note << "; ";
    pass = false;
    note << why;
  }
};

using Clock = std::chrono::steady_clock;

std::string join(const std::vector<long>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::vector<long> chart_oracle(std::size_t n, std::size_t m, std::size_t k) {
  std::vector<long> b(n + 2 * m + 1, 0);
  for (std::size_t j = 0; j + k <= m; ++j) b[j] = choose(static_cast<long>(m - k), static_cast<long>(j));
  return b;
}

const Polytope unit_interval = Polytope::box({{Rational(0), Rational(1)}});
const Polytope half_line = Polytope::box({{Rational(0), std::nullopt}});

void c1(Outcome& o) {
  std::mt19937 g(2024);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t m = uniform(g, 1, 4), n = uniform(g, 0, 2);
    const RandomPolyhedron p = random_polyhedron(g, m);
    const ChartModel model = chart_cohomology(ChartSignature(n, m, p.polytope));
    if (model.betti != chart_oracle(n, m, p.k)) o.fail("random polytope " + std::to_string(i) + ": " + join(model.betti));
    ++checked;
  }
  struct Fixture {
    const char* name;
    std::size_t n, m;
    Polytope p;
    std::size_t k;
  };
  const std::vector<Fixture> fixtures{
      {"[0,1]", 0, 1, unit_interval, 0},
      {"[0,inf)", 0, 1, half_line, 1},
      {"quadrant", 0, 2, Polytope::positive_orthant(2), 2},
      {"octant", 1, 3, Polytope::positive_orthant(3), 3},
      {"[0,1]x[0,inf)", 0, 2, product(unit_interval, half_line), 1},
      {"[0,1]^2", 2, 2, product(unit_interval, unit_interval), 0},
      {"R", 0, 1, Polytope::whole_space(1), 1},
  };
  for (const auto& f : fixtures) {
    if (chart_cohomology(ChartSignature(f.n, f.m, f.p)).betti != chart_oracle(f.n, f.m, f.k)) o.fail(f.name);
    ++checked;
  }
  o.note << checked << " charts";
}

void c2(Outcome& o) {
  const ChartModel model = chart_cohomology(ChartSignature(0, 1, unit_interval));
  o.note << "betti " << join(model.betti);
  if (model.betti != std::vector<long>{1, 1, 0}) o.fail("betti " + join(model.betti));
}

void c3(Outcome& o) {
  const std::vector<std::pair<const char*, std::vector<long>>> expected{
      {"p1", {1, 0, 1}}, {"p2", {1, 0, 1, 0, 1}}, {"p1xp1", {1, 0, 2, 0, 1}}, {"f1", {1, 0, 2, 0, 1}}};
  for (const auto& [name, want] : expected) {
    const Fan fan = parse_fan(read_file(data_path("fans/") + name + ".fan"));
    const std::vector<long> got = total_betti(refinement_manifest(fan, fan.ambient_dim())).betti;
    const std::vector<long> oracle = danilov_betti(fan);
    if (got != want || oracle != want) o.fail(std::string(name) + " " + join(got) + " vs " + join(oracle));
    else o.note << name << " " << join(got) << " ";
  }
}

void c4(Outcome& o) {
  const CoverManifest m = parse_manifest(read_file(data_path("manifests/tetrahedron_quadrants.manifest")));
  require_valid(m);
  const std::vector<long> got = total_betti(m).betti, nerve = nerve_cohomology(m);
  o.note << "total " << join(got) << ", nerve " << join(nerve);
  if (got != std::vector<long>{1, 0, 1} || nerve != got) o.fail("total " + join(got) + ", nerve " + join(nerve));
}

void c5(Outcome& o) {
  int manifests = 0, pairings = 0;
  for (const char* name : {"p1", "p2", "p1xp1", "f1", "tetrahedron_quadrants", "interval", "half_line", "square_times_line"}) {
    const CoverManifest m = parse_manifest(read_file(data_path("manifests/") + name + ".manifest"));
    if (!pd_symmetry_check(m).passed) o.fail(std::string("pd ") + name);
    ++manifests;
  }
  std::vector<ChartSignature> charts;
  for (const char* name : {"interval", "quadrant", "strip", "square"})
    charts.push_back(parse_chart(read_file(data_path("charts/") + name + ".chart")).signature);
  charts.emplace_back(1, 1, half_line);
  charts.emplace_back(2, 2, product(unit_interval, half_line));
  for (const auto& sig : charts) {
    const std::size_t k = chart_cohomology(sig).k;
    for (std::size_t j = 0; j + k <= sig.m; ++j) {
      const PairingMatrix p = pairing_matrix(sig, j, QuadratureSpec{});
      const auto want = static_cast<std::size_t>(choose(static_cast<long>(sig.m - k), static_cast<long>(j)));
      if (p.expected_rank != want || !p.nondegenerate(1e-6))
        o.fail("pairing " + sig.describe() + " j=" + std::to_string(j));
      ++pairings;
    }
  }
  o.note << manifests << " manifests, " << pairings << " pairing matrices";
}

void c6(Outcome& o) {
  const FormDocument bad = parse_form_document(read_file(data_path("forms/counterexample.form")));
  const StokesReport r = stokes_check(bad.omega, bad.chart.signature, bad.chart.half_space, QuadratureSpec{});
  if (std::abs(std::abs(r.interior.value) - 2 * M_PI) > 1e-6) o.fail("counterexample integral " + std::to_string(r.interior.value));
  if (!r.hypothesis_violated()) o.fail("counterexample not flagged");
  o.note << "counterexample |∫dω| = " << std::abs(r.interior.value);
  double worst = 0.0;
  for (const char* name : {"half_space_interval", "half_space_exp", "compact_bump", "line_times_quadrant"}) {
    const FormDocument doc = parse_form_document(read_file(data_path("forms/") + name + ".form"));
    const StokesReport s = stokes_check(doc.omega, doc.chart.signature, doc.chart.half_space, QuadratureSpec{});
    worst = std::max(worst, s.discrepancy);
    if (s.hypothesis_violated() || s.discrepancy > 1e-6) o.fail(std::string("stokes ") + name);
  }
  o.note << ", worst admissible discrepancy " << worst;
}

void c7(Outcome& o) {
  QuadratureSpec q;
  double worst = 0.0;
  auto check = [&](const AdjunctionReport& r, const char* what) {
    worst = std::max(worst, r.difference);
    if (!r.agrees(1e-6)) o.fail(what);
  };
  {
    const FiberProjection f = make_projection(ChartSignature(2, 0, Polytope::whole_space(0)), {{1}, {}});
    check(adjunction_check(parse_form("cos(x) dx", {1, 0}), parse_form("exp(-x1^2-x2^2) dx2", {2, 0}), f, q), "plane");
  }
  {
    const FiberProjection f = make_projection(ChartSignature(1, 1, unit_interval), {{}, {0}});
    FormExpr theta = parse_form("exp(-x^2)*bump(-1,2)(r) dr∧dθ∧dx", {1, 1});
    theta.corner = 0;
    check(adjunction_check(parse_form("cos(x)", {1, 0}), theta, f, q), "torus factor");
  }
  {
    const FiberProjection f = make_projection(ChartSignature(0, 2, product(unit_interval, half_line)), {{}, {1}});
    check(adjunction_check(parse_form("bump(-2,1)(r) dr∧dθ", {0, 1}),
                           parse_form("exp(r2-exp(r2))*bump(-1,1)(r1)*(2+sin(θ1)) dr2∧dθ2", {0, 2}), f, q),
          "strip");
  }
  o.note << "worst difference " << worst;
  try {
    make_projection(ChartSignature(0, 2, Polytope::from_generators(2, {{Rational(0), Rational(0)}}, {{BigInt(2), BigInt(1)}})),
                    {{}, {1}});
    o.fail("surjectivity failure accepted");
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::IntegralVectorSurjectivityFailure) o.fail(std::string("wrong refusal: ") + e.what());
    else o.note << ", non-surjective projection refused";
  }
}

int parity(long v) { return v % 2 == 0 ? 1 : -1; }

void c8(Outcome& o) {
  constexpr int trials = 500;
  std::mt19937 g(88);
  auto dim = [&](int hi) { return static_cast<std::size_t>(uniform(g, 0, hi)); };
  int fails[7] = {};
  std::ostringstream timing;
  auto run = [&](int law, const std::function<std::optional<bool>()>& instance) {
    const auto start = Clock::now();
    for (int done = 0; done < trials;) {
      const auto r = instance();
      if (!r) continue;  // not transverse; draw again
      ++done;
      if (!*r) ++fails[law];
    }
    timing << " " << law << ":" << std::chrono::duration<double>(Clock::now() - start).count() << "s";
  };
  // 1: over a point the fiber product is the product
  run(1, [&]() -> std::optional<bool> {
    const std::size_t a = dim(5), b = dim(5);
    const OrientedSpace t = fiber_product_orientation(QMatrix(0, a), QMatrix(0, b));
    return compare_orientation(t, {QMatrix::identity(a + b), 1}) == 1;
  });
  // 2: transverse submanifolds, T(A∩B) ⊕ N_B ⊕ N_A = TM
  run(2, [&]() -> std::optional<bool> {
    const std::size_t c = dim(5), a = uniform(g, 0, static_cast<int>(c)), b = uniform(g, static_cast<int>(c - a), static_cast<int>(c));
    const QMatrix df = random_matrix(g, c, a), dg = random_matrix(g, c, b);
    if (!transverse(df, dg) || rank(df) != a || rank(dg) != b) return std::nullopt;
    return intersection_sign(df, dg) == 1;
  });
  // 3: swapping the factors
  run(3, [&]() -> std::optional<bool> {
    const std::size_t a = dim(5), b = dim(5), c = dim(5);
    const QMatrix df = random_matrix(g, c, a), dg = random_matrix(g, c, b);
    if (!transverse(df, dg)) return std::nullopt;
    return swap_sign(df, dg) == parity((static_cast<long>(a) - static_cast<long>(c)) * (static_cast<long>(b) - static_cast<long>(c)));
  });
  // 4: no jumps along transverse paths
  run(4, [&]() -> std::optional<bool> {
    const std::size_t a = dim(5), b = dim(5), c = dim(4);
    const QMatrix f0 = random_matrix(g, c, a), g0 = random_matrix(g, c, b);
    const QMatrix f1 = random_matrix(g, c, a), g1 = random_matrix(g, c, b);
    return continuity_check(f0, g0, f1, g1);
  });
  // 5: the normal bundle identified with TC
  run(5, [&]() -> std::optional<bool> {
    const std::size_t a = dim(5), b = dim(5), c = dim(5);
    const QMatrix df = random_matrix(g, c, a), dg = random_matrix(g, c, b);
    if (!transverse(df, dg)) return std::nullopt;
    return normal_bundle_sign(df, dg) == parity(static_cast<long>(b * c));
  });
  // 6: associativity
  run(6, [&]() -> std::optional<bool> {
    const std::size_t a = dim(5), b = dim(5), c = dim(5), m1 = dim(5), m2 = dim(5);
    const QMatrix f = random_matrix(g, m1, a), gg = random_matrix(g, m1, b);
    const QMatrix h = random_matrix(g, m2, b), k = random_matrix(g, m2, c);
    if (!transverse(f, gg) || !transverse(h, k)) return std::nullopt;
    try {
      return associativity_check(f, gg, h, k).agrees();
    } catch (const Error&) {
      return std::nullopt;
    }
  });
  // the x-axis and the y-axis in the plane
  const QMatrix x{{Rational(1)}, {Rational(0)}}, y{{Rational(0)}, {Rational(1)}};
  if (intersection_sign(x, y) != 1) ++fails[2];
  int total = 0;
  for (int law = 1; law <= 6; ++law) {
    total += fails[law];
    if (fails[law]) o.fail("observation " + std::to_string(law) + ": " + std::to_string(fails[law]) + " failures");
  }
  o.note << "6 laws x " << trials << " instances, " << total << " failures;" << timing.str();
}

void c9(Outcome& o) {
  struct Case {
    const char* name;
    ChartSignature base, total;
    IntMatrix f;
    std::size_t b, t, fib;
  };
  IntMatrix first(1, 2);
  first(0, 0) = 1;
  const std::vector<Case> cases{
      {"T_[0,1] x R over R", ChartSignature(1, 0, Polytope::whole_space(0)), ChartSignature(1, 1, unit_interval), IntMatrix(0, 1), 0, 1, 1},
      {"square over interval", ChartSignature(0, 1, unit_interval), ChartSignature(0, 2, product(unit_interval, unit_interval)), first, 1, 2, 1},
      {"quadrant over half line", ChartSignature(0, 1, half_line), ChartSignature(0, 2, product(half_line, half_line)), first, 0, 0, 0},
  };
  for (const auto& c : cases) {
    const FamilyReport r = family_h1_check(c.base, c.total, c.f);
    const bool ok = r.passed && r.base_h1 == c.b && r.total_h1 == c.t && r.fiber_h1 == c.fib;
    if (!ok) o.fail(std::string(c.name) + ": " + r.describe());
  }
  if (o.pass) o.note << cases.size() << " families";
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<void(Outcome&)> run;
    double budget;  // seconds, 0 for none
  };
  const std::vector<Criterion> criteria{
      {"chart formula C(m-k, j)", c1, 5.0},
      {"T^1_[0,1] has the cohomology of C*", c2, 0.0},
      {"toric refinements match the fan Betti numbers", c3, 10.0},
      {"explosion of the tetrahedron cover gives H*(S^2)", c4, 0.0},
      {"Poincare duality and nondegenerate pairings", c5, 0.0},
      {"Stokes counterexample and admissible forms", c6, 30.0},
      {"fiber integration adjunction", c7, 0.0},
      {"orientation laws", c8, 5.0},
      {"family H^1 counts", c9, 0.0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = Clock::now();
    try {
      criteria[i].run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (criteria[i].budget > 0 && secs > criteria[i].budget) o.fail("over the time budget");
    if (!o.pass) ++failed;
    std::printf("C%zu %s  %s  [%.2fs] %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].title, secs, o.note.str().c_str());
  }
  return failed ? 1 : 0;
}
