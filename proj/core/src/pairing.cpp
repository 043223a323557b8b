#include "exdr/pairing.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "exdr/fan.hpp"
#include "exdr/linalg.hpp"

namespace exdr {

namespace {

FormExpr angular(const ChartCoordinates& c, const IntMatrix& covectors, std::size_t row) {
  FormExpr out(c, 1);
  for (std::size_t i = 0; i < c.m; ++i)
    if (covectors(row, i) != 0) out.add({c.theta(i)}, Expr(to_double(Rational(covectors(row, i)))));
  return out;
}

FormExpr wedge_rows(const ChartCoordinates& c, const IntMatrix& covectors, const std::vector<std::size_t>& rows,
                    FormExpr acc) {
  for (auto r : rows) acc = wedge(acc, angular(c, covectors, r));
  return acc;
}

double bump_mass(const QuadratureSpec& spec) {
  static const double mass = [&] {
    Integrand f = [](double t) { return Estimate{bump_derivative(-1.0, 1.0, t, 0), 0.0}; };
    return integrate_interval(f, -1.0, 1.0, 1e-14, spec.max_depth).value;
  }();
  return mass;
}

}  // namespace

std::vector<FormExpr> cohomology_representatives(const ChartSignature& sig, std::size_t j) {
  const auto model = chart_cohomology(sig);
  const ChartCoordinates c{sig.n, sig.m};
  std::vector<FormExpr> out;
  for (const auto& subset : subsets(model.h1_dim(), j))
    out.push_back(wedge_rows(c, model.generators, subset, FormExpr::scalar(c, Expr(1.0))));
  return out;
}

std::vector<FormExpr> compact_representatives(const ChartSignature& sig, std::size_t j) {
  const auto model = chart_compact_cohomology(sig);
  const ChartCoordinates c{sig.n, sig.m};
  const std::size_t free = model.generators.rows();
  std::vector<FormExpr> out;
  if (j > free) return out;
  QuadratureSpec spec;
  const double mass = bump_mass(spec);
  Expr phi(1.0 / std::pow(2.0 * std::numbers::pi, static_cast<double>(sig.m)));
  for (std::size_t k = 0; k < sig.n; ++k) phi = phi * Expr(1.0 / mass) * Expr::bump(-1.0, 1.0, Expr::var(c.x(k)));
  for (std::size_t i = 0; i < sig.m; ++i) phi = phi * Expr(1.0 / mass) * Expr::bump(-1.0, 1.0, Expr::var(c.r(i)));
  Monomial volume;
  for (std::size_t k = 0; k < sig.n; ++k) volume.push_back(c.x(k));
  for (std::size_t i = 0; i < sig.m; ++i) volume.push_back(c.r(i));
  FormExpr base(c, volume.size());
  base.add(volume, phi);
  std::vector<std::size_t> all_unbounded(model.unbounded_covectors.rows());
  for (std::size_t i = 0; i < all_unbounded.size(); ++i) all_unbounded[i] = i;
  base = wedge_rows(c, model.unbounded_covectors, all_unbounded, base);
  for (const auto& subset : subsets(free, free - j)) {
    FormExpr w = wedge_rows(c, model.generators, subset, base);
    w.corner = 0;
    out.push_back(std::move(w));
  }
  return out;
}

PairingMatrix pairing_matrix(const ChartSignature& sig, std::size_t j, const QuadratureSpec& spec) {
  const auto closed = cohomology_representatives(sig, j);
  const auto compact = compact_representatives(sig, j);
  PairingMatrix pm;
  pm.degree = j;
  pm.expected_rank = static_cast<std::size_t>(binomial(static_cast<long>(chart_cohomology(sig).h1_dim()), static_cast<long>(j)));
  QMatrix rounded(closed.size(), compact.size());
  for (std::size_t a = 0; a < closed.size(); ++a) {
    pm.entries.emplace_back();
    for (std::size_t b = 0; b < compact.size(); ++b) {
      const Estimate e = integrate(wedge(closed[a], compact[b]), sig, spec);
      pm.entries.back().push_back(e);
      const double nearest = std::round(e.value);
      pm.max_deviation = std::max(pm.max_deviation, std::abs(e.value - nearest));
      rounded(a, b) = Rational(static_cast<long>(nearest));
    }
  }
  pm.rank = rank(rounded);
  return pm;
}

std::string PairingMatrix::to_text() const {
  std::ostringstream os;
  os.precision(10);
  os << "pairing H^" << degree << " x H_c^(N-" << degree << "), " << entries.size() << "x"
     << (entries.empty() ? 0 : entries[0].size()) << "\n";
  for (const auto& row : entries) {
    for (std::size_t b = 0; b < row.size(); ++b) os << (b ? "  " : "  ") << row[b].value;
    os << "\n";
  }
  os << "rank " << rank << " (expected " << expected_rank << "), max deviation from integers " << max_deviation << "\n";
  return os.str();
}

}  // namespace exdr
