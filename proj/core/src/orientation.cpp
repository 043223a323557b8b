#include "exdr/orientation.hpp"

#include <sstream>

#include "exdr/errors.hpp"
#include "exdr/linalg.hpp"

namespace exdr {

namespace {

QMatrix rows_range(const QMatrix& m, std::size_t begin, std::size_t end) {
  QMatrix out(end - begin, m.cols());
  for (std::size_t r = begin; r < end; ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r - begin, c) = m(r, c);
  return out;
}

// Coordinates of the orthogonal projection onto span(k), in the basis k.
QMatrix projection_coords(const QMatrix& k, const QMatrix& x) {
  if (k.cols() == 0) return QMatrix(0, x.cols());
  const QMatrix kt = k.transpose();
  return *solve(kt * k, kt * x);
}

// Block matrix from a grid of blocks; all blocks in a row share a height.
QMatrix blocks(const std::vector<std::vector<QMatrix>>& grid, const std::vector<std::size_t>& heights,
               const std::vector<std::size_t>& widths) {
  std::size_t h = 0, w = 0;
  for (auto x : heights) h += x;
  for (auto x : widths) w += x;
  QMatrix out(h, w);
  std::size_t r0 = 0;
  for (std::size_t i = 0; i < heights.size(); ++i) {
    std::size_t c0 = 0;
    for (std::size_t j = 0; j < widths.size(); ++j) {
      const QMatrix& b = grid[i][j];
      if (!b.empty()) {
        if (b.rows() != heights[i] || b.cols() != widths[j]) throw Error(ErrorKind::ShapeError, "block shape mismatch");
        for (std::size_t r = 0; r < b.rows(); ++r)
          for (std::size_t c = 0; c < b.cols(); ++c) out(r0 + r, c0 + c) = b(r, c);
      }
      c0 += widths[j];
    }
    r0 += heights[i];
  }
  return out;
}

OrientedSpace oriented(QMatrix basis, int s) {
  if (basis.cols() > 0 && s < 0) {
    for (std::size_t r = 0; r < basis.rows(); ++r) basis(r, 0) = -basis(r, 0);
    s = 1;
  }
  return {std::move(basis), s};
}

QMatrix checked_cokernel(const QMatrix& a, const std::optional<QMatrix>& cokernel) {
  if (!cokernel) return orthogonal_complement(a);
  const QMatrix& c = *cokernel;
  if (c.rows() != a.rows() || c.cols() + rank(a) != a.rows() || rank(hstack(a, c)) != a.rows())
    throw Error(ErrorKind::ShapeError, "supplied cokernel is not a complement of the image");
  return c;
}

QMatrix neg(QMatrix m) { return Rational(-1) * std::move(m); }

}  // namespace

int det_sign(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeError, "determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  return sign(determinant(m));
}

int compare_orientation(const OrientedSpace& a, const OrientedSpace& b) {
  if (a.ambient() != b.ambient() || a.dimension() != b.dimension())
    throw Error(ErrorKind::ShapeError, "oriented spaces of different shapes");
  if (a.dimension() == 0) return a.sign * b.sign;
  auto change = solve(a.basis, b.basis);
  if (!change || rank(hstack(a.basis, b.basis)) != a.dimension())
    throw Error(ErrorKind::ShapeError, "oriented spaces span different subspaces");
  return a.sign * b.sign * det_sign(*change);
}

RelativeOrientation relative_orientation(const QMatrix& a, const std::optional<QMatrix>& cokernel) {
  const std::size_t dx = a.cols(), dy = a.rows();
  const QMatrix k = kernel(a);
  const QMatrix c = checked_cokernel(a, cokernel);
  // coker ⊕ X -> ker ⊕ Y
  const QMatrix m = blocks({{QMatrix(k.cols(), c.cols()), projection_coords(k, QMatrix::identity(dx))}, {c, a}},
                           {k.cols(), dy}, {c.cols(), dx});
  const int s = det_sign(m);
  return {oriented(k, s), c, s};
}

RelativeOrientation relative_orientation_right(const QMatrix& a, const std::optional<QMatrix>& cokernel) {
  const std::size_t dx = a.cols(), dy = a.rows();
  const QMatrix k = kernel(a);
  const QMatrix c = checked_cokernel(a, cokernel);
  // X ⊕ coker -> Y ⊕ ker
  const QMatrix m = blocks({{a, c}, {projection_coords(k, QMatrix::identity(dx)), QMatrix(k.cols(), c.cols())}},
                           {dy, k.cols()}, {dx, c.cols()});
  const int s = det_sign(m);
  return {oriented(k, s), c, s};
}

bool transverse(const QMatrix& df, const QMatrix& dg) {
  if (df.rows() != dg.rows()) throw Error(ErrorKind::ShapeError, "maps into targets of different dimension");
  return rank(hstack(df, neg(dg))) == df.rows();
}

OrientedSpace fiber_product_orientation(const QMatrix& df, const QMatrix& dg) {
  if (!transverse(df, dg)) throw Error(ErrorKind::NotTransverse, "df - dg is not onto the common target");
  const std::size_t a = df.cols(), b = dg.cols(), c = df.rows();
  const RelativeOrientation rf = relative_orientation(df);
  const RelativeOrientation rg = relative_orientation_right(dg);
  const QMatrix t = kernel(hstack(df, neg(dg)));
  const QMatrix tu = rows_range(t, 0, a), tw = rows_range(t, a, a + b);
  const std::size_t kf = rf.kernel.dimension(), kg = rg.kernel.dimension();
  const std::size_t cf = rf.cokernel.cols(), cg = rg.cokernel.cols();
  // coker df ⊕ T ⊕ coker dg -> ker df ⊕ TC ⊕ ker dg
  const QMatrix phi = blocks({{QMatrix(kf, cf), projection_coords(rf.kernel.basis, tu), QMatrix(kf, cg)},
                              {rf.cokernel, df * tu, rg.cokernel},
                              {QMatrix(kg, cf), projection_coords(rg.kernel.basis, tw), QMatrix(kg, cg)}},
                             {kf, c, kg}, {cf, t.cols(), cg});
  const int s = det_sign(phi) * rf.kernel.sign * rg.kernel.sign;
  if (s == 0) throw Error(ErrorKind::NotTransverse, "degenerate fiber product identification");
  return oriented(t, s);
}

int swap_sign(const QMatrix& df, const QMatrix& dg) {
  const OrientedSpace ab = fiber_product_orientation(df, dg);
  const OrientedSpace ba = fiber_product_orientation(dg, df);
  const std::size_t a = df.cols(), b = dg.cols();
  QMatrix moved(a + b, ba.dimension());
  for (std::size_t col = 0; col < ba.dimension(); ++col) {
    for (std::size_t r = 0; r < a; ++r) moved(r, col) = ba.basis(b + r, col);
    for (std::size_t r = 0; r < b; ++r) moved(a + r, col) = ba.basis(r, col);
  }
  return compare_orientation(ab, {moved, ba.sign});
}

int normal_bundle_sign(const QMatrix& df, const QMatrix& dg) {
  const OrientedSpace t = fiber_product_orientation(df, dg);
  const QMatrix l = hstack(df, neg(dg));
  const QMatrix n = orthogonal_complement(t.basis.cols() ? t.basis : QMatrix(l.cols(), 0));
  const QMatrix section = n * *inverse(l * n);
  return t.sign * det_sign(hstack(t.basis, section));
}

int intersection_sign(const QMatrix& df, const QMatrix& dg) {
  if (rank(df) != df.cols() || rank(dg) != dg.cols())
    throw Error(ErrorKind::ShapeError, "intersection needs injective maps");
  const OrientedSpace t = fiber_product_orientation(df, dg);
  auto normal = [](const QMatrix& d) {
    const QMatrix n = orthogonal_complement(d);
    return oriented(n, det_sign(hstack(d, n)));
  };
  const OrientedSpace na = normal(df), nb = normal(dg);
  const QMatrix tm = df * rows_range(t.basis, 0, df.cols());
  return t.sign * na.sign * nb.sign * det_sign(hstack(hstack(tm, nb.basis), na.basis));
}

std::string AssociativityReport::to_text() const {
  std::ostringstream os;
  os << "left vs middle " << left_vs_middle << "\nright vs middle " << right_vs_middle << "\n"
     << (agrees() ? "associative" : "NOT associative") << "\n";
  return os.str();
}

AssociativityReport associativity_check(const QMatrix& f, const QMatrix& g, const QMatrix& h, const QMatrix& k) {
  const std::size_t a = f.cols(), b = g.cols(), c = k.cols();
  if (h.cols() != b) throw Error(ErrorKind::ShapeError, "g and h must share the source B");
  const OrientedSpace hb = fiber_product_orientation(f, g);  // ⊂ TA ⊕ TB
  const OrientedSpace gb = fiber_product_orientation(h, k);  // ⊂ TB ⊕ TC
  const std::size_t th = hb.dimension(), tg = gb.dimension();
  const QMatrix h_b = rows_range(hb.basis, a, a + b);
  const QMatrix g_b = rows_range(gb.basis, 0, b);

  const OrientedSpace left = fiber_product_orientation(f, g * g_b);  // ⊂ TA ⊕ TG
  const OrientedSpace right = fiber_product_orientation(h * h_b, k);  // ⊂ TH ⊕ TC
  const OrientedSpace mid = fiber_product_orientation(h_b, g_b);      // ⊂ TH ⊕ TG

  const QMatrix left_embedded = vstack(rows_range(left.basis, 0, a), gb.basis * rows_range(left.basis, a, a + tg));
  const QMatrix right_embedded = vstack(hb.basis * rows_range(right.basis, 0, th), rows_range(right.basis, th, th + c));
  const QMatrix mid_ab = hb.basis * rows_range(mid.basis, 0, th);
  const QMatrix mid_bc = gb.basis * rows_range(mid.basis, th, th + tg);
  const QMatrix mid_embedded = vstack(mid_ab, rows_range(mid_bc, b, b + c));

  const OrientedSpace l{left_embedded, left.sign * gb.sign};
  const OrientedSpace r{right_embedded, right.sign * hb.sign};
  const OrientedSpace m{mid_embedded, mid.sign * hb.sign * gb.sign};
  return {compare_orientation(l, m), compare_orientation(r, m)};
}

namespace {

// Only called once the whole path is known to be transverse.
OrientedSpace at(const QMatrix& df0, const QMatrix& dg0, const QMatrix& df1, const QMatrix& dg1,
                                const Rational& t) {
  const Rational s = Rational(1) - t;
  const QMatrix df = s * df0 + t * df1;
  return fiber_product_orientation(df, s * dg0 + t * dg1);
}

using Poly = std::vector<Rational>;  // coefficients, lowest degree first

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Rational eval(const Poly& p, const Rational& t) {
  Rational v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * t + *it;
  return v;
}

Poly remainder(Poly a, const Poly& b) {
  while (a.size() >= b.size()) {
    const Rational q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

// Distinct real roots in (lo, hi], by Sturm's theorem.
int roots_in(const Poly& p, const Rational& lo, const Rational& hi) {
  std::vector<Poly> seq{p};
  Poly dp;
  for (std::size_t i = 1; i < p.size(); ++i) dp.push_back(Rational(static_cast<long>(i)) * p[i]);
  trim(dp);
  if (dp.empty()) return 0;
  seq.push_back(dp);
  for (;;) {
    Poly r = remainder(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  auto changes = [&](const Rational& t) {
    int count = 0, last = 0;
    for (const auto& q : seq) {
      const int s = sign(eval(q, t));
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return changes(lo) - changes(hi);
}

// det(L(t) L(t)^T) for L = [df, -dg] along the path; it vanishes exactly
// where transversality fails.
bool transverse_path(const QMatrix& df0, const QMatrix& dg0, const QMatrix& df1, const QMatrix& dg1) {
  const std::size_t c = df0.rows();
  const std::size_t degree = 2 * c;
  std::vector<Rational> ts, vs;
  for (std::size_t i = 0; i <= degree; ++i) {
    const Rational t(static_cast<long>(i), static_cast<long>(degree ? degree : 1));
    const Rational s = Rational(1) - t;
    const QMatrix l = hstack(s * df0 + t * df1, neg(s * dg0 + t * dg1));
    ts.push_back(t);
    vs.push_back(c == 0 ? Rational(1) : determinant(l * l.transpose()));
  }
  // Lagrange interpolation into monomial coefficients.
  Poly p(degree + 1, Rational(0));
  for (std::size_t i = 0; i <= degree; ++i) {
    Poly basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j <= degree; ++j) {
      if (j == i) continue;
      Poly next(basis.size() + 1, Rational(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= ts[j] * basis[k];
      }
      basis = std::move(next);
      denom *= ts[i] - ts[j];
    }
    for (std::size_t k = 0; k < basis.size(); ++k) p[k] += vs[i] / denom * basis[k];
  }
  trim(p);
  if (p.empty() || eval(p, Rational(0)) == 0) return false;
  return roots_in(p, Rational(0), Rational(1)) == 0;
}

// 1: same orientation, -1: jump, 0: the spaces are not close yet.
int step(const OrientedSpace& p, const OrientedSpace& q) {
  if (p.dimension() == 0) return p.sign * q.sign;
  const QMatrix pt = p.basis.transpose();
  const Rational cross = determinant(pt * q.basis);
  const Rational closeness = cross * cross / (determinant(pt * p.basis) * determinant(q.basis.transpose() * q.basis));
  if (closeness <= Rational(1, 2)) return 0;
  return sign(cross) * p.sign * q.sign;
}

}  // namespace

std::optional<bool> continuity_check(const QMatrix& df0, const QMatrix& dg0, const QMatrix& df1, const QMatrix& dg1,
                                     int samples) {
  struct Piece {
    Rational t0, t1;
    OrientedSpace o0, o1;
    int depth;
  };
  if (df0.rows() != df1.rows() || df0.cols() != df1.cols() || dg0.rows() != dg1.rows() || dg0.cols() != dg1.cols())
    throw Error(ErrorKind::ShapeError, "path endpoints of different shapes");
  if (!transverse(df0, dg0) || !transverse_path(df0, dg0, df1, dg1)) return std::nullopt;
  OrientedSpace prev = at(df0, dg0, df1, dg1, Rational(0));
  for (int i = 1; i <= samples; ++i) {
    const Rational t0(i - 1, samples), t1(i, samples);
    OrientedSpace cur = at(df0, dg0, df1, dg1, t1);
    std::vector<Piece> stack{{t0, t1, prev, cur, 0}};
    while (!stack.empty()) {
      Piece p = stack.back();
      stack.pop_back();
      // The midpoint guards against a fast half turn between the ends.
      const Rational mid = (p.t0 + p.t1) / 2;
      const OrientedSpace om = at(df0, dg0, df1, dg1, mid);
      const int whole = step(p.o0, p.o1), left = step(p.o0, om), right = step(om, p.o1);
      if (whole > 0 && left > 0 && right > 0) continue;
      if (p.depth >= 40) return false;
      stack.push_back({p.t0, mid, p.o0, om, p.depth + 1});
      stack.push_back({mid, p.t1, om, p.o1, p.depth + 1});
    }
    prev = std::move(cur);
  }
  return true;
}

}  // namespace exdr
