#include "exdr/family.hpp"

#include <sstream>

#include "exdr/linalg.hpp"

namespace exdr {

std::string FamilyReport::describe() const {
  std::ostringstream os;
  os << "h1(total) = " << total_h1 << ", h1(base) + h1(fiber) = " << base_h1 << " + " << fiber_h1
     << (passed ? " (ok)" : " (mismatch)");
  return os.str();
}

namespace {

QVector project(const IntMatrix& pi, std::span<const Rational> y) { return to_rational(pi).apply(y); }

QVector as_rational(const IntVector& v) { return QVector(v.begin(), v.end()); }

// Q cut by the equations pi y = v.
Polytope fiber_polytope(const Polytope& q, const IntMatrix& pi, const QVector& v) {
  auto ineqs = q.inequalities();
  for (std::size_t r = 0; r < pi.rows(); ++r) {
    IntVector row(pi.row(r).begin(), pi.row(r).end()), neg(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) neg[c] = -row[c];
    ineqs.push_back({row, v[r], false});
    ineqs.push_back({neg, -v[r], false});
  }
  return Polytope(q.ambient_dim(), std::move(ineqs));
}

}  // namespace

FamilyReport family_h1_check(const ChartSignature& base, const ChartSignature& total, const IntMatrix& projection) {
  const std::size_t m = base.m, mt = total.m;
  if (projection.rows() != m || projection.cols() != mt)
    throw Error(ErrorKind::ShapeError, "projection must be " + std::to_string(m) + "x" + std::to_string(mt));
  if (total.n < base.n || mt < m) throw Error(ErrorKind::NotAFamily, "total chart is smaller than the base");
  const auto snf = smith_normal_form(projection);
  if (snf.rank != m) throw Error(ErrorKind::NotAFamily, "projection is not surjective over Q");
  for (std::size_t i = 0; i < m; ++i)
    if (snf.diagonal(i, i) != 1) throw Error(ErrorKind::NotAFamily, "projection is not surjective on lattice points");

  const Polytope& p = base.polytope;
  const Polytope& q = total.polytope;
  if (p.is_empty() || q.is_empty()) throw Error(ErrorKind::EmptyPolytope, "empty chart polytope");
  for (const auto& v : q.vertices())
    if (!p.contains(project(projection, v))) throw Error(ErrorKind::NotAFamily, "Q does not project into P");
  auto image_dir = [&](const IntVector& d) {
    auto w = project(projection, as_rational(d));
    return primitive(w);
  };
  auto dir_in_p = [&](const IntVector& d) {
    return p.recedes_along(image_dir(d));
  };
  for (const auto& r : q.rays())
    if (!dir_in_p(r)) throw Error(ErrorKind::NotAFamily, "a recession direction of Q leaves P");
  std::vector<IntVector> image_rays, image_lines;
  for (const auto& r : q.rays()) image_rays.push_back(image_dir(r));
  for (const auto& l : q.lineality()) image_lines.push_back(image_dir(l));
  const Polytope image_cone = Polytope::from_generators(m, {QVector(m, Rational(0))}, image_rays, image_lines);
  for (const auto& r : p.rays())
    if (!image_cone.contains(as_rational(r))) throw Error(ErrorKind::NotAFamily, "a ray of P is not covered by Q");
  for (const auto& l : p.lineality()) {
    IntVector neg(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
    if (!image_cone.contains(as_rational(l)) || !image_cone.contains(as_rational(neg)))
      throw Error(ErrorKind::NotAFamily, "a line of P is not covered by Q");
  }
  std::size_t fiber_k = 0;
  bool first = true;
  for (const auto& v : p.vertices()) {
    const Polytope fiber = fiber_polytope(q, projection, v);
    if (fiber.is_empty()) throw Error(ErrorKind::NotAFamily, "empty fiber over a vertex of P");
    const std::size_t k = unbounded_span(fiber).k;
    if (!first && k != fiber_k) throw Error(ErrorKind::NotAFamily, "fibers over vertices of P differ");
    fiber_k = k;
    first = false;
  }

  FamilyReport out;
  out.base_h1 = m - unbounded_span(p).k;
  out.total_h1 = mt - unbounded_span(q).k;
  out.fiber_unbounded_rank = fiber_k;
  out.fiber_h1 = (mt - m) - fiber_k;
  out.passed = out.total_h1 == out.base_h1 + out.fiber_h1;
  return out;
}

}  // namespace exdr
