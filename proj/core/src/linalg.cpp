#include "exdr/linalg.hpp"

#include <algorithm>
#include <charconv>

namespace exdr {

Rational parse_rational(std::string_view text) {
  auto trimmed = text;
  while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t')) trimmed.remove_prefix(1);
  while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t')) trimmed.remove_suffix(1);
  if (trimmed.empty()) throw Error(ErrorKind::ParseError, "empty number");
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto strip_plus = [](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return std::string(s);
  };
  auto slash = trimmed.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_int(trimmed)) throw Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'");
    return Rational(BigInt(strip_plus(trimmed)));
  }
  auto num = trimmed.substr(0, slash);
  auto den = trimmed.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'");
  BigInt d(strip_plus(den));
  if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(BigInt(strip_plus(num)), d);
}

std::string to_string(const Rational& q) { return q.str(); }
std::string to_string(const BigInt& z) { return z.str(); }

QMatrix to_rational(const IntMatrix& m) {
  QMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  return out;
}

QMatrix from_columns(const std::vector<QVector>& columns, std::size_t rows) {
  QMatrix out(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error(ErrorKind::ShapeError, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) out(r, c) = columns[c][r];
  }
  return out;
}

QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix out(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::ShapeError, "row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = rows[r][c];
  }
  return out;
}

QMatrix hstack(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::ShapeError, "hstack row mismatch");
  QMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

QMatrix vstack(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::ShapeError, "vstack column mismatch");
  QMatrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) out(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r) out(a.rows() + r, c) = b(r, c);
  }
  return out;
}

QMatrix submatrix(const QMatrix& m, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  QMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::ShapeError, "dot length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RowEchelon rref(QMatrix m) {
  RowEchelon out;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    m.swap_rows(pivot, lead_row);
    Rational inv = 1 / m(lead_row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(lead_row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(r, j) -= f * m(lead_row, j);
    }
    out.pivot_cols.push_back(c);
    ++lead_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const QMatrix& m) {
  if (m.empty()) return 0;
  return rref(m).pivot_cols.size();
}

std::size_t rank(const IntMatrix& input) {
  if (input.empty()) return 0;
  IntMatrix m = input;
  std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    m.swap_rows(pivot, r);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        // Bareiss step: exact division by the previous pivot.
        m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

Rational determinant(QMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeError, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m(pivot, c) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      m.swap_rows(pivot, c);
      det = -det;
    }
    det *= m(c, c);
    Rational inv = 1 / m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      Rational f = m(r, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

QMatrix kernel(const QMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return QMatrix::identity(n);
  auto ech = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    QVector v(n, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) v[ech.pivot_cols[i]] = -ech.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return from_columns(basis, n);
}

QMatrix column_space(const QMatrix& m) {
  if (m.empty()) return QMatrix(m.rows(), 0);
  auto ech = rref(m);
  std::vector<std::size_t> all_rows(m.rows());
  for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = i;
  return submatrix(m, all_rows, ech.pivot_cols);
}

QMatrix orthogonal_complement(const QMatrix& m) { return kernel(m.transpose()); }

std::optional<QVector> solve(const QMatrix& m, const QVector& b) {
  QMatrix rhs(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
  auto x = solve(m, rhs);
  if (!x) return std::nullopt;
  return x->column(0);
}

std::optional<QMatrix> solve(const QMatrix& m, const QMatrix& b) {
  if (m.rows() != b.rows()) throw Error(ErrorKind::ShapeError, "solve: row mismatch");
  const std::size_t n = m.cols();
  auto ech = rref(hstack(m, b));
  QMatrix x(n, b.cols());
  for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) {
    std::size_t pc = ech.pivot_cols[i];
    if (pc >= n) return std::nullopt;  // pivot in augmented part: inconsistent
    for (std::size_t j = 0; j < b.cols(); ++j) x(pc, j) = ech.reduced(i, n + j);
  }
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeError, "inverse of non-square matrix");
  if (rank(m) != m.rows()) return std::nullopt;
  return solve(m, QMatrix::identity(m.rows()));
}

IntVector primitive(const QVector& v) {
  BigInt den = 1;
  for (const auto& q : v) den = lcm(den, denominator(q));
  IntVector out(v.size());
  BigInt g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = numerator(v[i]) * (den / denominator(v[i]));
    g = gcd(g, out[i]);
  }
  if (g > 1)
    for (auto& z : out) z /= g;
  return out;
}

}  // namespace exdr
