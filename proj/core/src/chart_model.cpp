#include "exdr/chart_model.hpp"

#include <sstream>

#include "exdr/fan.hpp"
#include "exdr/linalg.hpp"

namespace exdr {

ChartSignature::ChartSignature(std::size_t n_, std::size_t m_, Polytope p) : n(n_), m(m_), polytope(std::move(p)) {
  if (polytope.ambient_dim() != m)
    throw Error(ErrorKind::ShapeError, "chart polytope lives in Q^" + std::to_string(polytope.ambient_dim()) +
                                           " but m = " + std::to_string(m));
}

std::string ChartSignature::describe() const {
  std::ostringstream os;
  os << "R^" << n << " x T^" << m << "_" << polytope.describe();
  return os.str();
}

ChartModel chart_cohomology(const ChartSignature& sig) {
  auto span = unbounded_span(sig.polytope);
  ChartModel model;
  model.signature = sig;
  model.k = span.k;
  model.span = span.lattice;
  model.generators = span.lattice.annihilator;
  const long free = static_cast<long>(sig.m - span.k);
  model.betti.assign(sig.total_dim() + 1, 0);
  for (long j = 0; j <= free; ++j) model.betti[static_cast<std::size_t>(j)] = binomial(free, j);
  return model;
}

CompactModel chart_compact_cohomology(const ChartSignature& sig) {
  if (contains_lines(sig.polytope))
    throw Error(ErrorKind::DualityUnavailable, "polytope " + sig.polytope.describe() + " contains a line");
  if (!is_complete(sig.polytope))
    throw Error(ErrorKind::DualityUnavailable, "polytope " + sig.polytope.describe() + " has an open face");
  auto model = chart_cohomology(sig);
  CompactModel out;
  out.signature = sig;
  out.k = model.k;
  out.generators = model.generators;
  out.unbounded_covectors = model.span.coannihilator;
  const std::size_t big_n = sig.total_dim();
  out.betti.assign(big_n + 1, 0);
  for (std::size_t j = 0; j <= big_n; ++j) out.betti[j] = model.betti[big_n - j];
  out.lowest_degree = sig.n + sig.m + model.k;
  return out;
}

std::string CompactModel::describe_generator(const std::vector<std::size_t>& beta) const {
  auto covector = [](const IntMatrix& m, std::size_t row) {
    std::ostringstream os;
    os << "dθ[";
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(row, c);
    os << "]";
    return os.str();
  };
  std::ostringstream os;
  os << "f*a0";
  for (std::size_t i = 0; i < unbounded_covectors.rows(); ++i) os << " ^ " << covector(unbounded_covectors, i);
  for (auto b : beta) os << " ^ " << covector(generators, b);
  return os.str();
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

QMatrix exterior_power(const QMatrix& t, std::size_t j) {
  auto rows = subsets(t.rows(), j);
  auto cols = subsets(t.cols(), j);
  QMatrix out(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b)
      out(a, b) = j == 0 ? Rational(1) : determinant(submatrix(t, rows[a], cols[b]));
  return out;
}

RestrictionMap restriction_map(const ChartModel& source, const ChartModel& target, const IntMatrix& exponents) {
  if (exponents.rows() != source.signature.m || exponents.cols() != target.signature.m)
    throw Error(ErrorKind::ShapeError, "exponent matrix is " + std::to_string(exponents.rows()) + "x" +
                                           std::to_string(exponents.cols()) + ", expected " +
                                           std::to_string(source.signature.m) + "x" +
                                           std::to_string(target.signature.m));
  const QMatrix a = to_rational(exponents);
  const QMatrix gs = to_rational(source.generators);
  const QMatrix gt = to_rational(target.generators);
  // Pulled-back generators must vanish on the target's unbounded span.
  QMatrix pulled = gs * a;  // source_h1 x m_target
  const QMatrix lt = to_rational(target.span.basis).transpose();
  if (!(pulled * lt).is_zero())
    throw Error(ErrorKind::GluingError, "exponent matrix does not map the unbounded span of " +
                                            target.signature.describe() + " into that of " +
                                            source.signature.describe());
  RestrictionMap out;
  out.source_h1 = source.h1_dim();
  out.target_h1 = target.h1_dim();
  out.exponents = exponents;
  // Coordinates y with y * gt = pulled, i.e. gt^T y^T = pulled^T.
  auto coords = solve(gt.transpose(), pulled.transpose());
  if (!coords) throw Error(ErrorKind::GluingError, "pulled-back generator outside the target model");
  out.h1 = *coords;  // target_h1 x source_h1
  return out;
}

QMatrix RestrictionMap::exterior_power(std::size_t j) const { return exdr::exterior_power(h1, j); }

}  // namespace exdr
