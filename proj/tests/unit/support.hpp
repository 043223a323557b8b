#pragma once

// Shared helpers for the tests: seeded generators and small oracles that do
// not go through the library code they check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "exdr/expr.hpp"
#include "exdr/form.hpp"
#include "exdr/polytope.hpp"
#include "exdr/text_format.hpp"

namespace testing_support {

using namespace exdr;

inline std::string data_path(const std::string& rel) { return std::string(EXDR_DATA_DIR) + "/" + rel; }

inline long choose(long n, long k) {
  if (k < 0 || k > n) return 0;
  long out = 1;
  for (long i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

inline int uniform(std::mt19937& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

inline QMatrix random_matrix(std::mt19937& g, std::size_t rows, std::size_t cols, int lo = -3, int hi = 3) {
  QMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform(g, lo, hi);
  return m;
}

inline IntMatrix random_int_matrix(std::mt19937& g, std::size_t rows, std::size_t cols, int lo = -3, int hi = 3) {
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform(g, lo, hi);
  return m;
}

/// Rank of a small integer matrix by fraction-free elimination in 128-bit
/// integers (entries stay tiny in the tests).
inline std::size_t oracle_rank(std::vector<std::vector<long>> rows) {
  std::vector<std::vector<__int128>> a;
  for (const auto& r : rows) a.emplace_back(r.begin(), r.end());
  if (a.empty()) return 0;
  const std::size_t cols = a[0].size();
  std::size_t rank = 0;
  __int128 prev = 1;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      for (std::size_t j = 0; j < cols; ++j)
        if (j != c) a[i][j] = (a[rank][c] * a[i][j] - a[i][c] * a[rank][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

/// A polyhedron built from generators, with the rank of its recession span
/// known from the generators alone.
struct RandomPolyhedron {
  Polytope polytope;
  std::size_t k = 0;
};

inline RandomPolyhedron random_polyhedron(std::mt19937& g, std::size_t m) {
  std::vector<QVector> points;
  const int n_points = uniform(g, 1, 3);
  for (int i = 0; i < n_points; ++i) {
    QVector p(m);
    for (auto& x : p) x = Rational(uniform(g, -4, 4), uniform(g, 1, 3));
    points.push_back(p);
  }
  std::vector<IntVector> rays, lines;
  std::vector<std::vector<long>> span;
  const int n_rays = uniform(g, 0, static_cast<int>(m) + 1);
  for (int i = 0; i < n_rays; ++i) {
    IntVector v(m);
    std::vector<long> row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = uniform(g, -2, 2), v[j] = row[j];
    rays.push_back(v);
    span.push_back(row);
  }
  if (m > 0 && uniform(g, 0, 4) == 0) {
    IntVector v(m);
    std::vector<long> row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = uniform(g, -1, 1), v[j] = row[j];
    lines.push_back(v);
    span.push_back(row);
  }
  return {Polytope::from_generators(m, points, rays, lines), oracle_rank(span)};
}

/// Betti numbers of the smooth complete toric variety of a fan in dimension
/// 1 or 2: (1,0,1) and (1,0,#rays-2,0,1). Only fixed points and the Picard
/// rank go in.
inline std::vector<long> small_toric_betti(const std::string& fan_text) {
  std::size_t dim = 0;
  std::vector<std::string> rays;
  std::size_t pos = 0;
  while (pos < fan_text.size()) {
    std::size_t end = fan_text.find('\n', pos);
    if (end == std::string::npos) end = fan_text.size();
    std::string line = fan_text.substr(pos, end - pos);
    pos = end + 1;
    if (line.rfind("cone:", 0) != 0) continue;
    line = line.substr(5);
    std::size_t s = 0;
    while (s <= line.size()) {
      std::size_t e = line.find(';', s);
      if (e == std::string::npos) e = line.size();
      std::string v = line.substr(s, e - s);
      v.erase(0, v.find_first_not_of(' '));
      v.erase(v.find_last_not_of(' ') + 1);
      dim = 1 + static_cast<std::size_t>(std::count(v.begin(), v.end(), ' '));
      if (std::find(rays.begin(), rays.end(), v) == rays.end()) rays.push_back(v);
      s = e + 1;
    }
  }
  if (dim == 1) return {1, 0, 1};
  return {1, 0, static_cast<long>(rays.size()) - 2, 0, 1};
}

/// Random smooth expression in the given variables. Exponentials only see
/// bounded arguments so values stay moderate.
inline Expr random_expr(std::mt19937& g, const std::vector<int>& vars, int depth) {
  const int pick = depth <= 0 ? uniform(g, 0, 1) : uniform(g, 0, 7);
  auto leaf_var = [&] { return Expr::var(vars[static_cast<std::size_t>(uniform(g, 0, static_cast<int>(vars.size()) - 1))]); };
  switch (pick) {
    case 0: return Expr(static_cast<double>(uniform(g, -3, 3)) / 2.0);
    case 1: return leaf_var();
    case 2: return random_expr(g, vars, depth - 1) + random_expr(g, vars, depth - 1);
    case 3: return random_expr(g, vars, depth - 1) * random_expr(g, vars, depth - 1);
    case 4: return sin(random_expr(g, vars, depth - 1));
    case 5: return cos(random_expr(g, vars, depth - 1));
    case 6: return exp(sin(random_expr(g, vars, depth - 1)));
    default: return Expr::bump(-1.5, 1.5, leaf_var()) + pow(leaf_var(), 2);
  }
}

/// Random form of the given degree on a chart.
inline FormExpr random_form(std::mt19937& g, ChartCoordinates c, std::size_t degree, int depth = 2) {
  const std::size_t dim = c.dimension();
  std::vector<int> vars(dim);
  for (std::size_t i = 0; i < dim; ++i) vars[i] = static_cast<int>(i);
  FormExpr w(c, degree);
  if (degree > dim) return w;
  const int terms = uniform(g, 1, 3);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> pool = vars;
    std::shuffle(pool.begin(), pool.end(), g);
    Monomial mono(pool.begin(), pool.begin() + static_cast<long>(degree));
    w.add(mono, random_expr(g, vars, depth));
  }
  return w;
}

inline std::vector<double> random_point(std::mt19937& g, std::size_t dim) {
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  std::vector<double> p(dim);
  for (auto& x : p) x = u(g);
  return p;
}

}  // namespace testing_support
