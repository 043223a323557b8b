#pragma once

#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace exdr {

/// Scalar expression over chart coordinates. Variables are referred to by
/// their index in the chart's coordinate layout (x_1..x_n, then r_i, θ_i
/// interleaved); see FormExpr for the layout.
class Expr {
 public:
  enum class Op { Const, Var, Add, Mul, Pow, Exp, Sin, Cos, Bump, Step, Custom };

  /// Opaque numeric function of the coordinates (used for quadrature-backed
  /// coefficients). It cannot be differentiated or substituted into.
  struct Custom {
    std::string name;
    std::set<int> vars;
    std::function<double(std::span<const double>)> fn;
  };

  Expr();  // zero
  Expr(double c);  // NOLINT: implicit constants read naturally in code

  static Expr var(int index);
  /// k-th derivative of the smooth bump supported on [a, b], peak 1 at the
  /// midpoint, composed with `arg`.
  static Expr bump(double a, double b, Expr arg, int order = 0);
  /// k-th derivative of the smooth step, 0 for t <= a and 1 for t >= b.
  static Expr step(double a, double b, Expr arg, int order = 0);
  static Expr custom(std::shared_ptr<const Custom> c);

  Op op() const;
  double constant() const;  // Const only
  int var_index() const;    // Var only
  int power() const;        // Pow only
  const std::vector<Expr>& args() const;

  bool is_zero() const { return op() == Op::Const && constant() == 0.0; }
  bool is_constant() const { return op() == Op::Const; }

  double eval(std::span<const double> point) const;
  Expr derivative(int var) const;
  Expr substitute(const std::function<Expr(int)>& image) const;
  std::set<int> variables() const;
  bool depends_on(int var) const;

  /// Printed with `names[i]` for variable i.
  std::string to_string(const std::vector<std::string>& names) const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr pow(const Expr& base, int exponent);
  friend Expr exp(const Expr& a);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);

  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

 private:
  std::shared_ptr<const Node> node_;
};

/// Derivatives of the bump and step profiles at t (chain factors of the
/// affine rescaling included). Computed with truncated Taylor series.
double bump_derivative(double a, double b, double t, int order);
double step_derivative(double a, double b, double t, int order);

}  // namespace exdr
