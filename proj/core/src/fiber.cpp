#include "exdr/fiber.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <sstream>

#include "exdr/linalg.hpp"

namespace exdr {

namespace {

template <class V>
V keep(const V& v, const std::vector<std::size_t>& kept) {
  V out;
  for (auto i : kept) out.push_back(v[i]);
  return out;
}

bool is_zero_vector(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& c) { return c == 0; });
}

// True when the lattice generated by `gens` (rows, in Z^d) equals the
// saturated lattice with basis `target` (rank x d).
bool generates(const std::vector<IntVector>& gens, const IntMatrix& target) {
  const std::size_t rank = target.rows();
  if (rank == 0) return std::all_of(gens.begin(), gens.end(), is_zero_vector);
  if (gens.empty()) return false;
  const std::size_t d = target.cols();
  QMatrix rhs(d, gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t i = 0; i < d; ++i) rhs(i, g) = Rational(gens[g][i]);
  auto coords = solve(to_rational(target).transpose(), rhs);  // rank x #gens
  if (!coords) return false;
  IntMatrix z(rank, gens.size());
  for (std::size_t r = 0; r < rank; ++r)
    for (std::size_t c = 0; c < gens.size(); ++c) {
      if (!is_integer((*coords)(r, c))) return false;
      z(r, c) = numerator((*coords)(r, c));
    }
  const auto snf = smith_normal_form(z);
  if (snf.rank != rank) return false;
  for (std::size_t i = 0; i < rank; ++i)
    if (abs(snf.diagonal(i, i)) != 1) return false;
  return true;
}

void check_surjectivity(const Polytope& q, const Polytope& p, const std::vector<std::size_t>& kept) {
  const auto q_faces = face_lattice(q);
  const auto p_faces = face_lattice(p);
  for (const auto& face : q_faces.faces) {
    const QVector image = keep(relative_interior_point(q, face), kept);
    auto tight = p.tight_at(image);
    std::sort(tight.begin(), tight.end());
    const Face* target = nullptr;
    for (const auto& g : p_faces.faces) {
      auto t = g.tight;
      std::sort(t.begin(), t.end());
      if (t == tight) {
        target = &g;
        break;
      }
    }
    if (!target) throw Error(ErrorKind::IntegralVectorSurjectivityFailure, "image of a face of Q misses P");
    const auto source = face_direction_lattice(q, face);
    std::vector<IntVector> projected;
    for (std::size_t r = 0; r < source.rank; ++r) {
      IntVector row(source.basis.row(r).begin(), source.basis.row(r).end());
      projected.push_back(keep(row, kept));
    }
    const auto goal = face_direction_lattice(p, *target);
    IntMatrix goal_basis(goal.rank, p.ambient_dim());
    for (std::size_t r = 0; r < goal.rank; ++r)
      for (std::size_t c = 0; c < p.ambient_dim(); ++c) goal_basis(r, c) = goal.basis(r, c);
    if (!generates(projected, goal_basis)) {
      std::ostringstream os;
      os << "integral vectors over the face of Q through (";
      const auto mid = relative_interior_point(q, face);
      for (std::size_t i = 0; i < mid.size(); ++i) os << (i ? "," : "") << to_string(mid[i]);
      os << ") do not map onto the integral vectors of P";
      throw Error(ErrorKind::IntegralVectorSurjectivityFailure, os.str());
    }
  }
}

std::vector<std::size_t> complement(std::size_t count, const std::vector<std::size_t>& dropped, const char* what) {
  std::set<std::size_t> d(dropped.begin(), dropped.end());
  if (d.size() != dropped.size()) throw Error(ErrorKind::ShapeError, std::string("repeated dropped ") + what);
  if (!d.empty() && *d.rbegin() >= count) throw Error(ErrorKind::ShapeError, std::string("dropped ") + what + " out of range");
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < count; ++i)
    if (!d.count(i)) kept.push_back(i);
  return kept;
}

}  // namespace

FiberProjection make_projection(const ChartSignature& total, CoordinateDrop drop) {
  const auto kept_x = complement(total.n, drop.x, "real coordinate");
  const auto kept_t = complement(total.m, drop.torus, "torus coordinate");
  const Polytope& q = total.polytope;
  if (q.is_empty()) throw Error(ErrorKind::EmptyPolytope, "empty total polytope");

  std::vector<QVector> points;
  for (const auto& v : q.vertices()) points.push_back(keep(v, kept_t));
  std::vector<IntVector> rays, lines;
  for (const auto& r : q.rays())
    if (auto k = keep(r, kept_t); !is_zero_vector(k)) rays.push_back(k);
  for (const auto& l : q.lineality())
    if (auto k = keep(l, kept_t); !is_zero_vector(k)) lines.push_back(k);
  const Polytope p = Polytope::from_generators(kept_t.size(), points, rays, lines);
  check_surjectivity(q, p, kept_t);

  FiberProjection f;
  f.total = total;
  f.base = ChartSignature(kept_x.size(), kept_t.size(), p);
  f.drop = std::move(drop);
  const ChartCoordinates tc{total.n, total.m}, bc{kept_x.size(), kept_t.size()};
  f.to_base.assign(tc.dimension(), -1);
  for (std::size_t j = 0; j < kept_x.size(); ++j) f.to_base[static_cast<std::size_t>(tc.x(kept_x[j]))] = bc.x(j);
  for (std::size_t i = 0; i < kept_t.size(); ++i) {
    f.to_base[static_cast<std::size_t>(tc.r(kept_t[i]))] = bc.r(i);
    f.to_base[static_cast<std::size_t>(tc.theta(kept_t[i]))] = bc.theta(i);
  }
  Monomial order;
  for (std::size_t i = 0; i < f.to_base.size(); ++i)
    if (f.to_base[i] >= 0) order.push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < f.to_base.size(); ++i)
    if (f.to_base[i] < 0) f.fiber.push_back(static_cast<int>(i));
  order.insert(order.end(), f.fiber.begin(), f.fiber.end());
  f.orientation = sort_monomial(order);

  if (q.is_pointed())
    for (const auto& v : q.vertices()) {
      const QVector image = keep(v, kept_t);
      const auto& pv = p.vertices();
      auto it = std::find(pv.begin(), pv.end(), image);
      f.corner_image.push_back(it == pv.end() || !p.is_pointed() ? -1 : static_cast<int>(it - pv.begin()));
    }
  return f;
}

FormExpr fiber_integrate(const FormExpr& w, const FiberProjection& f, const QuadratureSpec& spec) {
  const ChartCoordinates tc{f.total.n, f.total.m}, bc{f.base.n, f.base.m};
  if (w.coords.n != tc.n || w.coords.m != tc.m) throw Error(ErrorKind::ShapeError, "form does not live on the total chart");
  const std::size_t fiber_dim = f.fiber.size();
  FormExpr out(bc, w.degree >= fiber_dim ? w.degree - fiber_dim : 0);
  if (w.degree < fiber_dim || w.is_zero()) return out;

  // Multiplicity of corners of Q over each corner of P.
  std::vector<int> count(f.base.polytope.is_pointed() ? f.base.polytope.vertices().size() : 0, 0);
  for (std::size_t v = 0; v < f.corner_image.size(); ++v) {
    if (w.corner && *w.corner != v) continue;
    if (f.corner_image[v] < 0)
      throw Error(ErrorKind::ShapeError, "a corner of the total chart does not lie over a corner of the base");
    ++count[static_cast<std::size_t>(f.corner_image[v])];
  }
  int multiplicity = 0;
  if (w.corner) {
    if (*w.corner >= f.corner_image.size()) throw Error(ErrorKind::ShapeError, "corner index out of range");
    out.corner = static_cast<std::size_t>(f.corner_image[*w.corner]);
    multiplicity = 1;
  } else {
    for (int c : count) {
      if (multiplicity != 0 && c != multiplicity)
        throw Error(ErrorKind::ShapeError, "base corners are covered by different numbers of corners");
      multiplicity = c;
    }
  }
  if (multiplicity == 0) return out;

  std::vector<std::pair<int, Axis>> axes;
  for (int v : f.fiber) {
    Axis a = tc.is_angle(v) ? Axis::Angle : tc.is_radial(v) ? Axis::Radial : Axis::Line;
    axes.push_back({v, a});
  }
  auto to_base_var = [&](int v) { return Expr::var(f.to_base[static_cast<std::size_t>(v)]); };
  const std::set<int> fiber_set(f.fiber.begin(), f.fiber.end());

  for (const auto& [mono, coef] : w.terms) {
    if (!std::includes(mono.begin(), mono.end(), f.fiber.begin(), f.fiber.end())) continue;
    Monomial base_part, order;
    for (int i : mono)
      if (!fiber_set.count(i)) base_part.push_back(i);
    order = base_part;
    order.insert(order.end(), f.fiber.begin(), f.fiber.end());
    const int sign = sort_monomial(order) * f.orientation * multiplicity;

    // Split off the factors that do not touch the fiber.
    const std::vector<Expr> factors = coef.op() == Expr::Op::Mul ? coef.args() : std::vector<Expr>{coef};
    Expr outside(1.0), inside(1.0);
    for (const auto& fac : factors) {
      const auto vars = fac.variables();
      const bool touches = std::any_of(vars.begin(), vars.end(), [&](int v) { return fiber_set.count(v) > 0; });
      (touches ? inside : outside) = (touches ? inside : outside) * fac;
    }
    const auto inside_vars = inside.variables();
    const bool closed = std::all_of(inside_vars.begin(), inside_vars.end(), [&](int v) { return fiber_set.count(v) > 0; });
    Expr integrated;
    if (closed) {
      integrated = Expr(integrate_scalar(inside, axes, std::vector<double>(tc.dimension(), 0.0), spec).value);
    } else {
      auto custom = std::make_shared<Expr::Custom>();
      custom->name = "fiber_integral";
      for (int v : inside_vars)
        if (!fiber_set.count(v)) custom->vars.insert(f.to_base[static_cast<std::size_t>(v)]);
      const std::vector<int> to_base = f.to_base;
      const std::size_t total_dim = tc.dimension();
      QuadratureSpec inner = spec;
      inner.tolerance = spec.tolerance * 1e-2;
      custom->fn = [inside, axes, to_base, total_dim, inner](std::span<const double> base_point) {
        std::vector<double> pt(total_dim, 0.0);
        for (std::size_t i = 0; i < total_dim; ++i)
          if (to_base[i] >= 0) pt[i] = base_point[static_cast<std::size_t>(to_base[i])];
        return integrate_scalar(inside, axes, pt, inner).value;
      };
      integrated = Expr::custom(custom);
    }
    Monomial mapped;
    for (int i : base_part) mapped.push_back(f.to_base[static_cast<std::size_t>(i)]);
    out.add(mapped, Expr(static_cast<double>(sign)) * outside.substitute(to_base_var) * integrated);
  }
  return out;
}

FormExpr pullback(const FormExpr& alpha, const FiberProjection& f) {
  const ChartCoordinates tc{f.total.n, f.total.m};
  std::vector<int> from_base(alpha.coords.dimension(), -1);
  for (std::size_t i = 0; i < f.to_base.size(); ++i)
    if (f.to_base[i] >= 0) from_base[static_cast<std::size_t>(f.to_base[i])] = static_cast<int>(i);
  FormExpr out(tc, alpha.degree);
  if (alpha.corner) {
    std::optional<std::size_t> found;
    for (std::size_t v = 0; v < f.corner_image.size(); ++v)
      if (f.corner_image[v] == static_cast<int>(*alpha.corner)) {
        if (found) throw Error(ErrorKind::ShapeError, "corner-restricted pullback over several corners");
        found = v;
      }
    if (!found) return out;
    out.corner = found;
  }
  auto subst = [&](int v) { return Expr::var(from_base[static_cast<std::size_t>(v)]); };
  for (const auto& [mono, coef] : alpha.terms) {
    Monomial mapped;
    for (int i : mono) mapped.push_back(from_base[static_cast<std::size_t>(i)]);
    out.add(mapped, coef.substitute(subst));
  }
  return out;
}

std::string AdjunctionReport::to_text() const {
  std::ostringstream os;
  os.precision(12);
  os << "integral over base of alpha ^ f_!theta:   " << base_side.value << " (bound " << base_side.bound << ")\n";
  os << "integral over total of f*alpha ^ theta:   " << total_side.value << " (bound " << total_side.bound << ")\n";
  os << "difference:                               " << difference << "\n";
  return os.str();
}

AdjunctionReport adjunction_check(const FormExpr& alpha, const FormExpr& theta, const FiberProjection& f,
                                  const QuadratureSpec& spec) {
  AdjunctionReport report;
  report.base_side = integrate(wedge(alpha, fiber_integrate(theta, f, spec)), f.base, spec);
  report.total_side = integrate(wedge(pullback(alpha, f), theta), f.total, spec);
  report.difference = std::abs(report.base_side.value - report.total_side.value);
  return report;
}

}  // namespace exdr
