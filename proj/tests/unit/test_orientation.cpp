#include <cmath>
#include <random>

#include "doctest.h"
#include "exdr/linalg.hpp"
#include "exdr/orientation.hpp"
#include "support.hpp"

using namespace exdr;
using namespace testing_support;

namespace {

// Determinant sign by floating point elimination; the matrices here are
// small with integer-ish entries, far from singular when they matter.
int float_det_sign(const QMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<double>(m(i, j));
  int sign = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
    if (std::abs(a[p][c]) < 1e-9) return 0;
    if (p != c) std::swap(a[p], a[c]), sign = -sign;
    if (a[c][c] < 0) sign = -sign;
    for (std::size_t i = c + 1; i < n; ++i) {
      const double f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return sign;
}

QMatrix block_matrix(const std::vector<std::vector<QMatrix>>& b) {
  std::size_t rows = 0, cols = 0;
  for (const auto& row : b) rows += row[0].rows();
  for (const auto& m : b[0]) cols += m.cols();
  QMatrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& row : b) {
    std::size_t c0 = 0;
    for (const auto& m : row) {
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(r0 + i, c0 + j) = m(i, j);
      c0 += m.cols();
    }
    r0 += row[0].rows();
  }
  return out;
}

QMatrix random_invertible(std::mt19937& g, std::size_t n) {
  for (;;) {
    QMatrix m = random_matrix(g, n, n, -2, 2);
    if (rank(m) == n) return m;
  }
}

int parity(long v) { return v % 2 == 0 ? 1 : -1; }

}  // namespace

TEST_SUITE("orientation") {
  TEST_CASE("zero map and a coordinate projection") {
    for (std::size_t dx = 0; dx <= 3; ++dx)
      for (std::size_t dy = 0; dy <= 3; ++dy) {
        const RelativeOrientation r = relative_orientation(QMatrix(dy, dx));
        // coker ⊕ X = Y ⊕ X against ker ⊕ Y = X ⊕ Y is the block swap
        const OrientedSpace standard{QMatrix::identity(dx), 1};
        CHECK(compare_orientation(r.kernel, standard) == parity(static_cast<long>(dx * dy)));
      }
    const RelativeOrientation r = relative_orientation(QMatrix{{Rational(0), Rational(1)}});
    REQUIRE(r.kernel.dimension() == 1);
    CHECK(r.kernel.basis(0, 0) > 0);
    CHECK(r.kernel.basis(1, 0) == 0);
  }

  TEST_CASE("kernel orientation by a row-space splitting") {
    std::mt19937 g(80);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t dx = uniform(g, 1, 4), dy = uniform(g, 0, 4);
      QMatrix a = random_matrix(g, dy, dx, -2, 2);
      if (uniform(g, 0, 2) == 0 && dy > 0)
        for (std::size_t j = 0; j < dx; ++j) a(0, j) = 0;
      const RelativeOrientation r = relative_orientation(a);
      const QMatrix& k = r.kernel.basis;
      const QMatrix w = column_space(a.transpose());
      if (k.cols() == 0) continue;
      // in the basis (K, W) of X the map is (c, s, t) -> (s, c + A W t)
      const std::size_t kc = k.cols(), cc = r.cokernel.cols(), wc = w.cols();
      const QMatrix m = block_matrix({{QMatrix(kc, cc), QMatrix::identity(kc), QMatrix(kc, wc)},
                                      {r.cokernel, QMatrix(dy, kc), a * w}});
      CHECK(float_det_sign(m) * float_det_sign(hstack(k, w)) * r.kernel.sign == 1);
    }
  }

  TEST_CASE("basis changes act by determinant signs") {
    std::mt19937 g(81);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t dx = uniform(g, 1, 4), dy = uniform(g, 0, 3);
      const QMatrix a = random_matrix(g, dy, dx, -2, 2);
      const QMatrix p = random_invertible(g, dx), q = random_invertible(g, dy);
      const RelativeOrientation base = relative_orientation(a);
      if (base.kernel.dimension() == 0) continue;
      // A' = Q A P; its kernel K' maps to P K' and its cokernel is Q C
      const RelativeOrientation moved = relative_orientation(q * a * p, q * base.cokernel);
      const OrientedSpace back{p * moved.kernel.basis, moved.kernel.sign};
      CHECK(compare_orientation(back, base.kernel) == float_det_sign(p) * (dy ? float_det_sign(q) : 1));
      // another complement of the image changes the sign by its own determinant
      if (base.cokernel.cols() > 0) {
        const QMatrix r = random_invertible(g, base.cokernel.cols());
        const RelativeOrientation other = relative_orientation(a, base.cokernel * r);
        CHECK(compare_orientation(other.kernel, base.kernel) == float_det_sign(r));
      }
    }
  }

  TEST_CASE("fiber product laws on random transverse maps") {
    std::mt19937 g(82);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const std::size_t a = uniform(g, 0, 5), b = uniform(g, 0, 5), c = uniform(g, 0, 5);
      const QMatrix df = random_matrix(g, c, a), dg = random_matrix(g, c, b);
      if (!transverse(df, dg)) {
        CHECK_THROWS_AS(fiber_product_orientation(df, dg), Error);
        continue;
      }
      ++checked;
      const long ac = static_cast<long>(a) - static_cast<long>(c), bc = static_cast<long>(b) - static_cast<long>(c);
      CHECK(swap_sign(df, dg) == parity(ac * bc));
      CHECK(normal_bundle_sign(df, dg) == parity(static_cast<long>(b * c)));
      if (rank(df) == a && rank(dg) == b) CHECK(intersection_sign(df, dg) == 1);
    }
    CHECK(checked > 100);
  }

  TEST_CASE("associativity") {
    std::mt19937 g(83);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t a = uniform(g, 0, 4), b = uniform(g, 0, 4), c = uniform(g, 0, 4);
      const std::size_t m1 = uniform(g, 0, 3), m2 = uniform(g, 0, 3);
      const QMatrix f = random_matrix(g, m1, a), gg = random_matrix(g, m1, b);
      const QMatrix h = random_matrix(g, m2, b), k = random_matrix(g, m2, c);
      if (!transverse(f, gg) || !transverse(h, k)) continue;
      try {
        const AssociativityReport r = associativity_check(f, gg, h, k);
        ++checked;
        CHECK(r.agrees());
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotTransverse);
      }
    }
    CHECK(checked > 50);
  }

  TEST_CASE("continuity along paths") {
    std::mt19937 g(84);
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t a = uniform(g, 0, 4), b = uniform(g, 0, 4), c = uniform(g, 0, 3);
      const QMatrix f0 = random_matrix(g, c, a), g0 = random_matrix(g, c, b);
      const QMatrix f1 = random_matrix(g, c, a), g1 = random_matrix(g, c, b);
      const auto r = continuity_check(f0, g0, f1, g1);
      if (!r) continue;
      ++checked;
      CHECK(*r);
    }
    CHECK(checked > 20);
    // the path t -> [1 - 2t] passes through the zero map
    const QMatrix one{{Rational(1)}}, minus{{Rational(-1)}}, none(1, 0);
    CHECK_FALSE(continuity_check(one, none, minus, none).has_value());
  }

  TEST_CASE("over a point the fiber product is the product") {
    for (std::size_t a = 0; a <= 3; ++a)
      for (std::size_t b = 0; b <= 3; ++b) {
        const OrientedSpace t = fiber_product_orientation(QMatrix(0, a), QMatrix(0, b));
        CHECK(compare_orientation(t, {QMatrix::identity(a + b), 1}) == 1);
      }
  }

  TEST_CASE("two lines in the plane meet in a negative point") {
    const QMatrix x_axis{{Rational(1)}, {Rational(0)}}, y_axis{{Rational(0)}, {Rational(1)}};
    const OrientedSpace p = fiber_product_orientation(x_axis, y_axis);
    CHECK(p.dimension() == 0);
    CHECK(p.sign == -1);
    CHECK(fiber_product_orientation(y_axis, x_axis).sign == 1);
  }
}
