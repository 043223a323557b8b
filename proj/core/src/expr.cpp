#include "exdr/expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "exdr/errors.hpp"

namespace exdr {

struct Expr::Node {
  Op op = Op::Const;
  double value = 0.0;  // Const
  int index = 0;       // Var index, Pow exponent, Bump/Step derivative order
  double a = 0.0, b = 0.0;
  std::vector<Expr> args;
  std::shared_ptr<const Custom> custom;
};

namespace {

using Series = std::vector<double>;

Series series_mul(const Series& p, const Series& q) {
  Series out(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; i + j < p.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

Series series_reciprocal(const Series& p) {
  Series out(p.size(), 0.0);
  out[0] = 1.0 / p[0];
  for (std::size_t k = 1; k < p.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += p[j] * out[k - j];
    out[k] = -s / p[0];
  }
  return out;
}

Series series_exp(const Series& p) {
  Series out(p.size(), 0.0);
  out[0] = std::exp(p[0]);
  for (std::size_t k = 1; k < p.size(); ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * p[j] * out[k - j];
    out[k] = s / static_cast<double>(k);
  }
  return out;
}

double nth_derivative(const Series& s, int order) {
  double f = 1.0;
  for (int i = 2; i <= order; ++i) f *= i;
  return f * s[static_cast<std::size_t>(order)];
}

Series affine(double c0, double c1, int order) {
  Series s(static_cast<std::size_t>(order) + 1, 0.0);
  s[0] = c0;
  if (order >= 1) s[1] = c1;
  return s;
}

}  // namespace

double bump_derivative(double a, double b, double t, int order) {
  const double scale = 2.0 / (b - a);
  const double s0 = (2.0 * t - a - b) / (b - a);
  if (s0 <= -1.0 || s0 >= 1.0) return 0.0;
  const Series s = affine(s0, scale, order);
  Series g = series_mul(s, s);  // 1 - s^2
  for (auto& c : g) c = -c;
  g[0] += 1.0;
  Series h = series_reciprocal(g);  // 1 - 1/(1 - s^2)
  for (auto& c : h) c = -c;
  h[0] += 1.0;
  return nth_derivative(series_exp(h), order);
}

double step_derivative(double a, double b, double t, int order) {
  const double s0 = (t - a) / (b - a);
  if (s0 <= 0.0) return 0.0;
  if (s0 >= 1.0) return order == 0 ? 1.0 : 0.0;
  const double scale = 1.0 / (b - a);
  auto phi = [&](double c0, double c1) {  // exp(-1/s)
    Series inv = series_reciprocal(affine(c0, c1, order));
    for (auto& c : inv) c = -c;
    return series_exp(inv);
  };
  const Series p = phi(s0, scale);
  const Series q = phi(1.0 - s0, -scale);
  Series sum(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) sum[i] = p[i] + q[i];
  return nth_derivative(series_mul(p, series_reciprocal(sum)), order);
}

Expr::Expr() : Expr(0.0) {}

Expr::Expr(double c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = c;
  node_ = std::move(n);
}

Expr Expr::var(int index) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->index = index;
  return Expr(std::move(n));
}

static Expr make_profile(Expr::Op op, double a, double b, Expr arg, int order) {
  if (!(a < b)) throw Error(ErrorKind::ParseError, "profile interval must satisfy a < b");
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->a = a;
  n->b = b;
  n->index = order;
  if (arg.is_constant()) {
    const double t = arg.constant();
    return op == Expr::Op::Bump ? Expr(bump_derivative(a, b, t, order)) : Expr(step_derivative(a, b, t, order));
  }
  n->args = {std::move(arg)};
  return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
}

Expr Expr::bump(double a, double b, Expr arg, int order) { return make_profile(Op::Bump, a, b, std::move(arg), order); }
Expr Expr::step(double a, double b, Expr arg, int order) { return make_profile(Op::Step, a, b, std::move(arg), order); }

Expr Expr::custom(std::shared_ptr<const Custom> c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Custom;
  n->custom = std::move(c);
  return Expr(std::move(n));
}

Expr::Op Expr::op() const { return node_->op; }
double Expr::constant() const { return node_->value; }
int Expr::var_index() const { return node_->index; }
int Expr::power() const { return node_->index; }
const std::vector<Expr>& Expr::args() const { return node_->args; }

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() && b.is_constant()) return Expr(a.constant() + b.constant());
  auto n = std::make_shared<Expr::Node>();
  n->op = Expr::Op::Add;
  double c = 0.0;
  for (const Expr* e : {&a, &b}) {
    if (e->op() == Expr::Op::Add) {
      for (const auto& t : e->args()) {
        if (t.is_constant()) c += t.constant();
        else n->args.push_back(t);
      }
    } else if (e->is_constant()) {
      c += e->constant();
    } else {
      n->args.push_back(*e);
    }
  }
  if (c != 0.0) n->args.insert(n->args.begin(), Expr(c));
  if (n->args.size() == 1) return n->args[0];
  return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
}

Expr operator-(const Expr& a) { return Expr(-1.0) * a; }
Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr(0.0);
  if (a.is_constant() && a.constant() == 1.0) return b;
  if (b.is_constant() && b.constant() == 1.0) return a;
  if (a.is_constant() && b.is_constant()) return Expr(a.constant() * b.constant());
  auto n = std::make_shared<Expr::Node>();
  n->op = Expr::Op::Mul;
  double c = 1.0;
  for (const Expr* e : {&a, &b}) {
    if (e->op() == Expr::Op::Mul) {
      for (const auto& t : e->args()) {
        if (t.is_constant()) c *= t.constant();
        else n->args.push_back(t);
      }
    } else if (e->is_constant()) {
      c *= e->constant();
    } else {
      n->args.push_back(*e);
    }
  }
  if (c == 0.0) return Expr(0.0);
  if (c != 1.0) n->args.insert(n->args.begin(), Expr(c));
  if (n->args.size() == 1) return n->args[0];
  return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
}

Expr pow(const Expr& base, int exponent) {
  if (exponent == 0) return Expr(1.0);
  if (exponent == 1) return base;
  if (base.is_constant()) return Expr(std::pow(base.constant(), exponent));
  if (base.op() == Expr::Op::Pow) return pow(base.args()[0], base.power() * exponent);
  auto n = std::make_shared<Expr::Node>();
  n->op = Expr::Op::Pow;
  n->index = exponent;
  n->args = {base};
  return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
}

static Expr unary(Expr::Op op, const Expr& a) {
  if (a.is_constant()) {
    const double v = a.constant();
    return Expr(op == Expr::Op::Exp ? std::exp(v) : op == Expr::Op::Sin ? std::sin(v) : std::cos(v));
  }
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->args = {a};
  return Expr(std::shared_ptr<const Expr::Node>(std::move(n)));
}

Expr exp(const Expr& a) { return unary(Expr::Op::Exp, a); }
Expr sin(const Expr& a) { return unary(Expr::Op::Sin, a); }
Expr cos(const Expr& a) { return unary(Expr::Op::Cos, a); }

double Expr::eval(std::span<const double> point) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var: return point[static_cast<std::size_t>(n.index)];
    case Op::Add: {
      double s = 0.0;
      for (const auto& t : n.args) s += t.eval(point);
      return s;
    }
    case Op::Mul: {
      double p = 1.0;
      for (const auto& t : n.args) {
        p *= t.eval(point);
        if (p == 0.0) return 0.0;
      }
      return p;
    }
    case Op::Pow: return std::pow(n.args[0].eval(point), n.index);
    case Op::Exp: return std::exp(n.args[0].eval(point));
    case Op::Sin: return std::sin(n.args[0].eval(point));
    case Op::Cos: return std::cos(n.args[0].eval(point));
    case Op::Bump: return bump_derivative(n.a, n.b, n.args[0].eval(point), n.index);
    case Op::Step: return step_derivative(n.a, n.b, n.args[0].eval(point), n.index);
    case Op::Custom: return n.custom->fn(point);
  }
  return 0.0;
}

Expr Expr::derivative(int v) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Const: return Expr(0.0);
    case Op::Var: return Expr(n.index == v ? 1.0 : 0.0);
    case Op::Add: {
      Expr s;
      for (const auto& t : n.args) s = s + t.derivative(v);
      return s;
    }
    case Op::Mul: {
      Expr s;
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        Expr term = n.args[i].derivative(v);
        if (term.is_zero()) continue;
        for (std::size_t j = 0; j < n.args.size(); ++j)
          if (j != i) term = term * n.args[j];
        s = s + term;
      }
      return s;
    }
    case Op::Pow: return Expr(static_cast<double>(n.index)) * pow(n.args[0], n.index - 1) * n.args[0].derivative(v);
    case Op::Exp: return *this * n.args[0].derivative(v);
    case Op::Sin: return cos(n.args[0]) * n.args[0].derivative(v);
    case Op::Cos: return -sin(n.args[0]) * n.args[0].derivative(v);
    case Op::Bump:
    case Op::Step: {
      Expr inner = n.args[0].derivative(v);
      if (inner.is_zero()) return Expr(0.0);
      return make_profile(n.op, n.a, n.b, n.args[0], n.index + 1) * inner;
    }
    case Op::Custom:
      if (!n.custom->vars.count(v)) return Expr(0.0);
      throw Error(ErrorKind::ShapeError, "cannot differentiate tabulated coefficient '" + n.custom->name + "'");
  }
  return Expr(0.0);
}

Expr Expr::substitute(const std::function<Expr(int)>& image) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Const: return *this;
    case Op::Var: return image(n.index);
    case Op::Add: {
      Expr s;
      for (const auto& t : n.args) s = s + t.substitute(image);
      return s;
    }
    case Op::Mul: {
      Expr p(1.0);
      for (const auto& t : n.args) p = p * t.substitute(image);
      return p;
    }
    case Op::Pow: return pow(n.args[0].substitute(image), n.index);
    case Op::Exp: return exp(n.args[0].substitute(image));
    case Op::Sin: return sin(n.args[0].substitute(image));
    case Op::Cos: return cos(n.args[0].substitute(image));
    case Op::Bump:
    case Op::Step: return make_profile(n.op, n.a, n.b, n.args[0].substitute(image), n.index);
    case Op::Custom:
      throw Error(ErrorKind::ShapeError, "cannot substitute into tabulated coefficient '" + n.custom->name + "'");
  }
  return *this;
}

std::set<int> Expr::variables() const {
  std::set<int> out;
  const Node& n = *node_;
  if (n.op == Op::Var) out.insert(n.index);
  if (n.op == Op::Custom) out = n.custom->vars;
  for (const auto& t : n.args) {
    auto sub = t.variables();
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

bool Expr::depends_on(int v) const { return variables().count(v) > 0; }

namespace {

std::string number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

int precedence(Expr::Op op) {
  switch (op) {
    case Expr::Op::Add: return 1;
    case Expr::Op::Mul: return 2;
    case Expr::Op::Pow: return 3;
    default: return 4;
  }
}

}  // namespace

std::string Expr::to_string(const std::vector<std::string>& names) const {
  const Node& n = *node_;
  auto wrap = [&](const Expr& e, int prec) {
    std::string s = e.to_string(names);
    bool negative_const = e.is_constant() && e.constant() < 0;
    return precedence(e.op()) < prec || (negative_const && prec > 1) ? "(" + s + ")" : s;
  };
  switch (n.op) {
    case Op::Const: return number(n.value);
    case Op::Var:
      return static_cast<std::size_t>(n.index) < names.size() ? names[static_cast<std::size_t>(n.index)]
                                                              : "v" + std::to_string(n.index);
    case Op::Add: {
      std::string s;
      for (std::size_t i = 0; i < n.args.size(); ++i) s += (i ? " + " : "") + wrap(n.args[i], 1);
      return s;
    }
    case Op::Mul: {
      std::string s;
      for (std::size_t i = 0; i < n.args.size(); ++i) s += (i ? "*" : "") + wrap(n.args[i], 2);
      return s;
    }
    case Op::Pow: return wrap(n.args[0], 4) + "^" + (n.index < 0 ? "(" + std::to_string(n.index) + ")" : std::to_string(n.index));
    case Op::Exp: return "exp(" + n.args[0].to_string(names) + ")";
    case Op::Sin: return "sin(" + n.args[0].to_string(names) + ")";
    case Op::Cos: return "cos(" + n.args[0].to_string(names) + ")";
    case Op::Bump:
    case Op::Step: {
      std::string s = n.op == Op::Bump ? "bump" : "step";
      if (n.index > 0) s += std::string(static_cast<std::size_t>(n.index), '\'');
      return s + "(" + number(n.a) + "," + number(n.b) + ")(" + n.args[0].to_string(names) + ")";
    }
    case Op::Custom: return n.custom->name;
  }
  return "?";
}

}  // namespace exdr
