#include "exdr/integrate.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>

#include "exdr/errors.hpp"

namespace exdr {

namespace {

struct Plan {
  enum class Kind { Leaf, Product, Iterate } kind = Kind::Leaf;
  Expr expr;  // Leaf: integrand; Product: constant factor
  double factor = 1.0;
  std::vector<std::unique_ptr<Plan>> parts;
  int var = 0;
  Axis axis = Axis::Line;
};

std::string axis_name(Axis a) {
  switch (a) {
    case Axis::Angle: return "an angle";
    case Axis::Radial: return "a radial coordinate";
    default: return "a line coordinate";
  }
}

std::unique_ptr<Plan> build(const Expr& e, const std::vector<std::pair<int, Axis>>& axes) {
  auto plan = std::make_unique<Plan>();
  if (axes.empty()) {
    plan->expr = e;
    return plan;
  }
  const auto used = e.variables();
  std::vector<std::pair<int, Axis>> present;
  for (const auto& [v, axis] : axes) {
    if (used.count(v)) {
      present.push_back({v, axis});
    } else if (axis == Axis::Angle) {
      plan->factor *= 2.0 * std::numbers::pi;
    } else {
      throw Error(ErrorKind::DivergenceSuspected,
                  "integrand is constant along " + axis_name(axis) + " (coordinate " + std::to_string(v) + ")");
    }
  }
  if (present.empty()) {
    plan->kind = Plan::Kind::Product;
    plan->expr = e;
    return plan;
  }

  // Union-find over the present axes, joined by shared factors.
  std::vector<Expr> factors = e.op() == Expr::Op::Mul ? e.args() : std::vector<Expr>{e};
  std::vector<std::size_t> parent(present.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::vector<std::vector<std::size_t>> factor_axes(factors.size());
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const auto vars = factors[f].variables();
    for (std::size_t i = 0; i < present.size(); ++i)
      if (vars.count(present[i].first)) factor_axes[f].push_back(i);
    for (std::size_t k = 1; k < factor_axes[f].size(); ++k) parent[find(factor_axes[f][k])] = find(factor_axes[f][0]);
  }
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < present.size(); ++i)
    if (find(i) == i) roots.push_back(i);
  bool has_constant = false;
  for (const auto& fa : factor_axes) has_constant |= fa.empty();

  if (roots.size() == 1 && !has_constant && plan->factor == 1.0) {
    plan->kind = Plan::Kind::Iterate;
    plan->var = present[0].first;
    plan->axis = present[0].second;
    plan->parts.push_back(build(e, {present.begin() + 1, present.end()}));
    return plan;
  }
  plan->kind = Plan::Kind::Product;
  Expr constant(1.0);
  for (std::size_t f = 0; f < factors.size(); ++f)
    if (factor_axes[f].empty()) constant = constant * factors[f];
  plan->expr = constant;
  for (auto root : roots) {
    Expr group(1.0);
    std::vector<std::pair<int, Axis>> group_axes;
    for (std::size_t i = 0; i < present.size(); ++i)
      if (find(i) == root) group_axes.push_back(present[i]);
    for (std::size_t f = 0; f < factors.size(); ++f)
      if (!factor_axes[f].empty() && find(factor_axes[f][0]) == root) group = group * factors[f];
    plan->parts.push_back(build(group, group_axes));
  }
  return plan;
}

Estimate run(const Plan& plan, std::vector<double>& pt, double tol, const QuadratureSpec& spec) {
  switch (plan.kind) {
    case Plan::Kind::Leaf: return {plan.expr.eval(pt), 0.0};
    case Plan::Kind::Product: {
      Estimate out{plan.factor * plan.expr.eval(pt), 0.0};
      if (out.value == 0.0) return out;
      const double part_tol = tol / (static_cast<double>(plan.parts.size()) * std::max(1.0, std::abs(out.value)));
      for (const auto& part : plan.parts) {
        out = out * run(*part, pt, part_tol, spec);
        if (out.value == 0.0 && out.bound == 0.0) break;
      }
      return out;
    }
    case Plan::Kind::Iterate: {
      const Plan& inner = *plan.parts[0];
      const int v = plan.var;
      const bool leaf = inner.kind == Plan::Kind::Leaf;
      Integrand f = [&](double t) {
        std::vector<double> local = pt;
        local[static_cast<std::size_t>(v)] = t;
        return leaf ? Estimate{inner.expr.eval(local), 0.0} : run(inner, local, 0.1 * tol, spec);
      };
      return integrate_axis(f, plan.axis, 0.5 * tol, spec);
    }
  }
  return {};
}

}  // namespace

Estimate integrate_scalar(const Expr& f, const std::vector<std::pair<int, Axis>>& axes, std::vector<double> point,
                          const QuadratureSpec& spec) {
  if (f.is_zero()) return {};
  const auto plan = build(f, axes);
  double tol = spec.tolerance;
  Estimate e;
  for (int attempt = 0; attempt < 3; ++attempt, tol *= 0.1) {
    e = run(*plan, point, tol, spec);
    if (e.bound <= spec.tolerance) break;
  }
  return e;
}

std::vector<std::pair<int, Axis>> chart_axes(const ChartCoordinates& c, bool half_space) {
  std::vector<std::pair<int, Axis>> out;
  for (std::size_t j = 0; j < c.n; ++j) out.push_back({c.x(j), j == 0 && half_space ? Axis::NegativeHalf : Axis::Line});
  for (std::size_t i = 0; i < c.m; ++i) {
    out.push_back({c.r(i), Axis::Radial});
    out.push_back({c.theta(i), Axis::Angle});
  }
  return out;
}

std::size_t corner_count(const FormExpr& w, const ChartSignature& sig) {
  if (!sig.polytope.is_pointed() || sig.polytope.is_empty()) return 0;
  if (w.corner) {
    if (*w.corner >= sig.polytope.vertices().size())
      throw Error(ErrorKind::ShapeError, "corner index " + std::to_string(*w.corner) + " out of range");
    return 1;
  }
  return sig.polytope.vertices().size();
}

Estimate integrate(const FormExpr& w, const ChartSignature& sig, const QuadratureSpec& spec, bool half_space) {
  if (w.coords.n != sig.n || w.coords.m != sig.m) throw Error(ErrorKind::ShapeError, "form and chart disagree on (n, m)");
  if (half_space && sig.n == 0) throw Error(ErrorKind::ShapeError, "a half-space chart needs n >= 1");
  if (w.is_zero()) return {};
  const std::size_t big_n = sig.total_dim();
  if (w.degree != big_n)
    throw Error(ErrorKind::ShapeError, "only top-degree forms are integrated (degree " + std::to_string(w.degree) +
                                           ", dimension " + std::to_string(big_n) + ")");
  const std::size_t corners = corner_count(w, sig);
  if (corners == 0) return {};
  Monomial top(big_n);
  std::iota(top.begin(), top.end(), 0);
  Estimate e = integrate_scalar(w.coefficient(top), chart_axes(w.coords, half_space),
                                std::vector<double>(big_n, 0.0), spec);
  const double c = static_cast<double>(corners);
  return {c * e.value, c * e.bound};
}

std::string StokesReport::to_text() const {
  std::ostringstream os;
  os.precision(12);
  os << "integral of d(omega) over M:  " << interior.value << " (bound " << interior.bound << ")\n";
  os << "integral of omega over dM:    " << boundary.value << " (bound " << boundary.bound << ")\n";
  os << "discrepancy:                  " << discrepancy << "\n";
  if (hypothesis_violated()) {
    os << "hypothesis violated; discrepancy expected\n";
    for (const auto& f : admissibility.failures) os << "  " << f.condition << " on stratum " << f.stratum << "\n";
  }
  return os.str();
}

StokesReport stokes_check(const FormExpr& w, const ChartSignature& sig, bool half_space, const QuadratureSpec& spec) {
  const std::size_t big_n = sig.total_dim();
  if (w.degree + 1 != big_n && !w.is_zero())
    throw Error(ErrorKind::ShapeError, "Stokes check needs a form of degree N - 1 = " + std::to_string(big_n - 1));
  StokesReport report;
  report.admissibility = check_admissible(w, sig);
  report.interior = integrate(d(w), sig, spec, half_space);
  if (half_space) {
    if (sig.n == 0) throw Error(ErrorKind::ShapeError, "a half-space chart needs n >= 1");
    const std::size_t corners = corner_count(w, sig);
    Monomial rest(big_n - 1);
    std::iota(rest.begin(), rest.end(), 1);
    const Expr f = w.coefficient(rest);
    auto axes = chart_axes(w.coords, false);
    axes.erase(axes.begin());  // x_1 is fixed at 0
    if (corners > 0 && !f.is_zero()) {
      Estimate e = integrate_scalar(f, axes, std::vector<double>(big_n, 0.0), spec);
      report.boundary = {static_cast<double>(corners) * e.value, static_cast<double>(corners) * e.bound};
    }
  }
  report.discrepancy = std::abs(report.interior.value - report.boundary.value);
  return report;
}

}  // namespace exdr
