#include "exdr/form.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "exdr/linalg.hpp"

namespace exdr {

std::vector<std::string> ChartCoordinates::names() const {
  std::vector<std::string> out(dimension());
  for (std::size_t j = 0; j < n; ++j) out[j] = n == 1 ? "x" : "x" + std::to_string(j + 1);
  for (std::size_t i = 0; i < m; ++i) {
    const std::string suffix = m == 1 ? "" : std::to_string(i + 1);
    out[n + 2 * i] = "r" + suffix;
    out[n + 2 * i + 1] = "θ" + suffix;
  }
  return out;
}

int sort_monomial(Monomial& mono) {
  int sign = 1;
  for (std::size_t i = 1; i < mono.size(); ++i)
    for (std::size_t j = i; j > 0 && mono[j - 1] >= mono[j]; --j) {
      if (mono[j - 1] == mono[j]) return 0;
      std::swap(mono[j - 1], mono[j]);
      sign = -sign;
    }
  return sign;
}

FormExpr FormExpr::scalar(ChartCoordinates c, Expr f) {
  FormExpr out(c, 0);
  out.add({}, f);
  return out;
}

FormExpr FormExpr::basis(ChartCoordinates c, int index) {
  if (index < 0 || static_cast<std::size_t>(index) >= c.dimension())
    throw Error(ErrorKind::ShapeError, "one-form index out of range");
  FormExpr out(c, 1);
  out.add({index}, Expr(1.0));
  return out;
}

void FormExpr::add(Monomial mono, const Expr& f) {
  if (mono.size() != degree) throw Error(ErrorKind::ShapeError, "monomial degree does not match the form");
  const int sign = sort_monomial(mono);
  if (sign == 0 || f.is_zero()) return;
  auto it = terms.find(mono);
  Expr sum = (it == terms.end() ? Expr(0.0) : it->second) + (sign > 0 ? f : -f);
  if (sum.is_zero()) {
    if (it != terms.end()) terms.erase(it);
  } else {
    terms[mono] = sum;
  }
}

Expr FormExpr::coefficient(const Monomial& mono) const {
  auto it = terms.find(mono);
  return it == terms.end() ? Expr(0.0) : it->second;
}

std::map<Monomial, double> FormExpr::eval(std::span<const double> point) const {
  std::map<Monomial, double> out;
  for (const auto& [mono, f] : terms) out[mono] = f.eval(point);
  return out;
}

std::string FormExpr::to_string() const {
  if (terms.empty()) return "0";
  const auto names = coords.names();
  std::string out;
  bool first = true;
  for (const auto& [mono, f] : terms) {
    std::string coef = f.to_string(names);
    if (f.op() == Expr::Op::Add) coef = "(" + coef + ")";
    if (!first) out += " + ";
    first = false;
    if (mono.empty()) {
      out += coef;
      continue;
    }
    if (!(f.is_constant() && f.constant() == 1.0)) out += coef + "*";
    for (std::size_t i = 0; i < mono.size(); ++i) out += (i ? "∧d" : "d") + names[static_cast<std::size_t>(mono[i])];
  }
  return out;
}

static void require_compatible(const FormExpr& a, const FormExpr& b) {
  if (a.coords.n != b.coords.n || a.coords.m != b.coords.m)
    throw Error(ErrorKind::ShapeError, "forms live on different charts");
}

FormExpr operator+(const FormExpr& a, const FormExpr& b) {
  require_compatible(a, b);
  if (a.is_zero() && a.degree != b.degree) return b;
  if (b.is_zero() && a.degree != b.degree) return a;
  if (a.degree != b.degree) throw Error(ErrorKind::ShapeError, "cannot add forms of different degrees");
  FormExpr out = a;
  if (b.corner != a.corner) {
    if (a.is_zero()) out.corner = b.corner;
    else if (!b.is_zero()) throw Error(ErrorKind::ShapeError, "cannot add forms restricted to different corners");
  }
  for (const auto& [mono, f] : b.terms) out.add(mono, f);
  return out;
}

FormExpr operator*(const Expr& f, const FormExpr& a) {
  FormExpr out(a.coords, a.degree);
  out.corner = a.corner;
  for (const auto& [mono, g] : a.terms) out.add(mono, f * g);
  return out;
}

FormExpr operator-(const FormExpr& a, const FormExpr& b) { return a + Expr(-1.0) * b; }

FormExpr d(const FormExpr& w) {
  FormExpr out(w.coords, w.degree + 1);
  out.corner = w.corner;
  if (w.degree >= w.coords.dimension()) return out;
  for (const auto& [mono, f] : w.terms)
    for (int v : f.variables()) {
      Monomial m{v};
      m.insert(m.end(), mono.begin(), mono.end());
      out.add(std::move(m), f.derivative(v));
    }
  return out;
}

FormExpr wedge(const FormExpr& a, const FormExpr& b) {
  require_compatible(a, b);
  if (a.degree + b.degree > a.coords.dimension())
    throw Error(ErrorKind::DegreeOverflow, "wedge of degrees " + std::to_string(a.degree) + " and " +
                                               std::to_string(b.degree) + " exceeds dimension " +
                                               std::to_string(a.coords.dimension()));
  FormExpr out(a.coords, a.degree + b.degree);
  if (a.corner && b.corner && *a.corner != *b.corner) return out;
  out.corner = a.corner ? a.corner : b.corner;
  for (const auto& [ma, fa] : a.terms)
    for (const auto& [mb, fb] : b.terms) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      out.add(std::move(m), fa * fb);
    }
  return out;
}

FormExpr interior(const std::vector<double>& v, const FormExpr& w) {
  if (w.degree == 0) return FormExpr(w.coords, 0);
  FormExpr out(w.coords, w.degree - 1);
  out.corner = w.corner;
  for (const auto& [mono, f] : w.terms)
    for (std::size_t s = 0; s < mono.size(); ++s) {
      const double c = v[static_cast<std::size_t>(mono[s])];
      if (c == 0.0) continue;
      Monomial rest = mono;
      rest.erase(rest.begin() + static_cast<long>(s));
      out.add(std::move(rest), Expr(s % 2 == 0 ? c : -c) * f);
    }
  return out;
}

FormExpr pullback_monomial(const FormExpr& w, const IntMatrix& a) {
  const ChartCoordinates src = w.coords;
  if (a.rows() != src.m) throw Error(ErrorKind::ShapeError, "exponent matrix must have one row per torus coordinate");
  const ChartCoordinates tgt{src.n, a.cols()};
  auto image_of = [&](int index) {  // linear combination of target coordinates
    std::vector<std::pair<int, double>> combo;
    if (index < static_cast<int>(src.n)) return std::vector<std::pair<int, double>>{{index, 1.0}};
    const std::size_t i = src.torus_index(index);
    const bool angle = src.is_angle(index);
    for (std::size_t b = 0; b < tgt.m; ++b) {
      const double c = to_double(Rational(a(i, b)));
      if (c != 0.0) combo.emplace_back(angle ? tgt.theta(b) : tgt.r(b), c);
    }
    return combo;
  };
  auto subst = [&](int index) {
    Expr e;
    for (auto [t, c] : image_of(index)) e = e + Expr(c) * Expr::var(t);
    return e;
  };
  FormExpr out(tgt, w.degree);
  out.corner = w.corner;
  for (const auto& [mono, f] : w.terms) {
    FormExpr piece = FormExpr::scalar(tgt, f.substitute(subst));
    piece.corner = w.corner;
    for (int index : mono) {
      FormExpr one(tgt, 1);
      for (auto [t, c] : image_of(index)) one.add({t}, Expr(c));
      piece = wedge(piece, one);
    }
    out = out + piece;
  }
  out.degree = w.degree;
  return out;
}

std::string AdmissibilityReport::to_text() const {
  std::ostringstream os;
  os << (admissible() ? "admissible" : "not admissible") << "\n";
  for (const auto& f : failures) os << "  " << f.condition << " fails on stratum " << f.stratum << ": " << f.detail << "\n";
  return os.str();
}

AdmissibilityReport check_admissible(const FormExpr& w, const ChartSignature& sig) {
  if (w.coords.n != sig.n || w.coords.m != sig.m) throw Error(ErrorKind::ShapeError, "form and chart disagree on (n, m)");
  if (w.degree > sig.total_dim()) throw Error(ErrorKind::DegreeOverflow, "form degree exceeds the chart dimension");
  AdmissibilityReport report;
  const Polytope& p = sig.polytope;
  const auto lattice = face_lattice(p);
  const ChartCoordinates& cc = w.coords;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> box(-3.0, 3.0), angle(0.0, 2.0 * std::numbers::pi);
  constexpr double depth = 60.0;
  constexpr double tol = 1e-9;

  for (const auto& face : lattice.faces) {
    if (face.dimension <= 0) continue;
    // Corners from which the stratum is approached; none when P has lines.
    std::vector<std::size_t> corners;
    if (p.is_pointed())
      for (auto v : face.vertices)
        if (!w.corner || *w.corner == v) corners.push_back(v);
    if (p.is_pointed() && corners.empty()) continue;
    const auto dirs = face_direction_lattice(p, face);
    const QVector mid = relative_interior_point(p, face);
    std::string where = "{";
    for (std::size_t i = 0; i < mid.size(); ++i) where += (i ? "," : "") + exdr::to_string(mid[i]);
    where += "} dim " + std::to_string(face.dimension);

    for (int condition = 0; condition < 2; ++condition) {
      bool& ok = condition == 0 ? report.integral_vectors : report.tropical_maps;
      for (std::size_t row = 0; row < dirs.rank; ++row) {
        std::vector<double> v(cc.dimension(), 0.0);
        for (std::size_t i = 0; i < sig.m; ++i) {
          const double u = to_double(Rational(dirs.basis(row, i)));
          v[static_cast<std::size_t>(condition == 0 ? cc.r(i) : cc.theta(i))] = u;
        }
        const FormExpr contracted = interior(v, w);
        if (contracted.is_zero()) continue;
        double worst = 0.0;
        for (int sample = 0; sample < 100; ++sample) {
          std::vector<double> pt(cc.dimension());
          for (std::size_t j = 0; j < cc.n; ++j) pt[j] = box(rng);
          for (std::size_t i = 0; i < cc.m; ++i) {
            pt[static_cast<std::size_t>(cc.r(i))] = box(rng);
            pt[static_cast<std::size_t>(cc.theta(i))] = angle(rng);
          }
          if (!corners.empty()) {
            const auto& v0 = p.vertices()[corners[static_cast<std::size_t>(sample) % corners.size()]];
            std::vector<double> dir(sig.m);
            double norm = 0.0;
            for (std::size_t i = 0; i < sig.m; ++i) {
              dir[i] = to_double(mid[i] - v0[i]);
              norm = std::max(norm, std::abs(dir[i]));
            }
            for (std::size_t i = 0; i < sig.m; ++i) pt[static_cast<std::size_t>(cc.r(i))] -= depth * dir[i] / norm;
          }
          for (const auto& [mono, value] : contracted.eval(pt)) worst = std::max(worst, std::abs(value));
        }
        if (worst > tol) {
          ok = false;
          std::ostringstream os;
          os << "contraction with direction " << row << " reaches " << worst;
          report.failures.push_back({where, condition == 0 ? "integral vectors" : "tropical maps", os.str()});
        }
      }
    }
  }
  return report;
}

}  // namespace exdr
