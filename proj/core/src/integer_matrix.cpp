#include "exdr/integer_matrix.hpp"

#include "exdr/linalg.hpp"

namespace exdr {

namespace {

void add_row_multiple(IntMatrix& m, std::size_t target, std::size_t source, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c) m(target, c) += factor * m(source, c);
}

void add_col_multiple(IntMatrix& m, std::size_t target, std::size_t source, const BigInt& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, target) += factor * m(r, source);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input) {
  const std::size_t rows = input.rows(), cols = input.cols();
  IntMatrix a = input;
  IntMatrix left = IntMatrix::identity(rows);
  IntMatrix right = IntMatrix::identity(cols);
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero magnitude in the trailing block becomes the pivot.
      std::size_t pi = rows, pj = cols;
      BigInt best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          BigInt mag = abs(a(i, j));
          if (pi == rows || mag < best) {
            best = mag;
            pi = i;
            pj = j;
          }
        }
      if (pi == rows) break;
      a.swap_rows(t, pi);
      left.swap_rows(t, pi);
      a.swap_cols(t, pj);
      right.swap_cols(t, pj);

      bool clear = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        BigInt q = a(i, t) / a(t, t);
        add_row_multiple(a, i, t, -q);
        add_row_multiple(left, i, t, -q);
        if (a(i, t) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        BigInt q = a(t, j) / a(t, t);
        add_col_multiple(a, j, t, -q);
        add_col_multiple(right, j, t, -q);
        if (a(t, j) != 0) clear = false;
      }
      if (!clear) continue;

      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            add_row_multiple(a, t, i, BigInt(1));
            add_row_multiple(left, t, i, BigInt(1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (a(t, t) == 0) break;
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) a(t, c) = -a(t, c);
      for (std::size_t c = 0; c < rows; ++c) left(t, c) = -left(t, c);
    }
  }
  SmithForm out{std::move(left), std::move(a), std::move(right), 0};
  for (std::size_t i = 0; i < std::min(rows, cols); ++i)
    if (out.diagonal(i, i) != 0) ++out.rank;
  return out;
}

std::size_t rational_rank(const IntMatrix& m) { return smith_normal_form(m).rank; }

BigInt integer_determinant(const IntMatrix& m) {
  Rational d = determinant(to_rational(m));
  return numerator(d);
}

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  if (m.rows() == 0) return true;
  return abs(integer_determinant(m)) == 1;
}

IntMatrix int_from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix out(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::ShapeError, "integer row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = rows[r][c];
  }
  return out;
}

SaturatedLattice saturate(const std::vector<IntVector>& generators, std::size_t ambient_dim) {
  SaturatedLattice out;
  out.ambient_dim = ambient_dim;
  // Generators as columns of a d x g matrix.
  IntMatrix gen(ambient_dim, generators.size());
  for (std::size_t c = 0; c < generators.size(); ++c) {
    if (generators[c].size() != ambient_dim) throw Error(ErrorKind::ShapeError, "lattice generator length mismatch");
    for (std::size_t r = 0; r < ambient_dim; ++r) gen(r, c) = generators[c][r];
  }
  IntMatrix u = IntMatrix::identity(ambient_dim);
  std::size_t k = 0;
  if (!generators.empty()) {
    auto snf = smith_normal_form(gen);
    u = std::move(snf.left);
    k = snf.rank;
  }
  out.rank = k;
  // gen = u^{-1} D v^{-1}: the first k columns of u^{-1} span the saturation.
  auto uinv_q = inverse(to_rational(u));
  IntMatrix uinv(ambient_dim, ambient_dim);
  for (std::size_t r = 0; r < ambient_dim; ++r)
    for (std::size_t c = 0; c < ambient_dim; ++c) uinv(r, c) = numerator((*uinv_q)(r, c));

  out.basis = IntMatrix(k, ambient_dim);
  out.coannihilator = IntMatrix(k, ambient_dim);
  out.quotient_basis = IntMatrix(ambient_dim - k, ambient_dim);
  out.annihilator = IntMatrix(ambient_dim - k, ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i)
    for (std::size_t c = 0; c < ambient_dim; ++c) {
      if (i < k) {
        out.basis(i, c) = uinv(c, i);
        out.coannihilator(i, c) = u(i, c);
      } else {
        out.quotient_basis(i - k, c) = uinv(c, i);
        out.annihilator(i - k, c) = u(i, c);
      }
    }
  return out;
}

}  // namespace exdr
