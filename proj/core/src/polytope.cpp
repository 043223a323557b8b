#include "exdr/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "exdr/linalg.hpp"

namespace exdr {

namespace {

BigInt int_dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector make_primitive(IntVector v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

// (alpha) * a - (beta) * b, made primitive.
IntVector combine(const BigInt& alpha, const IntVector& a, const BigInt& beta, const IntVector& b) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = alpha * a[i] - beta * b[i];
  return make_primitive(std::move(out));
}

bool is_zero_vector(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

struct WorkingRay {
  IntVector v;
  std::vector<bool> zero;  // zero[c]: constraint c (processed so far) is tight
};

QVector to_qvector(const IntVector& v) {
  QVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
  return out;
}

}  // namespace

ConeGenerators cone_generators(const std::vector<IntVector>& constraints, std::size_t dim) {
  std::vector<IntVector> lineality;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector e(dim, BigInt(0));
    e[i] = 1;
    lineality.push_back(std::move(e));
  }
  std::vector<WorkingRay> rays;
  const std::size_t nc = constraints.size();

  for (std::size_t ci = 0; ci < nc; ++ci) {
    const IntVector& h = constraints[ci];
    if (h.size() != dim) throw Error(ErrorKind::ShapeError, "constraint length mismatch");

    std::size_t pivot = lineality.size();
    for (std::size_t i = 0; i < lineality.size(); ++i)
      if (int_dot(h, lineality[i]) != 0) {
        pivot = i;
        break;
      }

    if (pivot < lineality.size()) {
      IntVector l0 = lineality[pivot];
      BigInt hl0 = int_dot(h, l0);
      if (hl0 < 0) {
        for (auto& x : l0) x = -x;
        hl0 = -hl0;
      }
      std::vector<IntVector> next_lin;
      for (std::size_t i = 0; i < lineality.size(); ++i) {
        if (i == pivot) continue;
        IntVector l = combine(hl0, lineality[i], int_dot(h, lineality[i]), l0);
        if (!is_zero_vector(l)) next_lin.push_back(std::move(l));
      }
      for (auto& r : rays) {
        r.v = combine(hl0, r.v, int_dot(h, r.v), l0);
        r.zero[ci] = true;
      }
      WorkingRay fresh{l0, std::vector<bool>(nc, false)};
      for (std::size_t c = 0; c < ci; ++c) fresh.zero[c] = true;
      rays.push_back(std::move(fresh));
      lineality = std::move(next_lin);
      continue;
    }

    std::vector<WorkingRay> positive, negative, zero;
    std::vector<BigInt> pos_val, neg_val;
    for (auto& r : rays) {
      BigInt s = int_dot(h, r.v);
      if (s > 0) {
        positive.push_back(r);
        pos_val.push_back(s);
      } else if (s < 0) {
        negative.push_back(r);
        neg_val.push_back(s);
      } else {
        r.zero[ci] = true;
        zero.push_back(r);
      }
    }
    std::vector<WorkingRay> next;
    for (auto& r : positive) next.push_back(r);
    for (auto& r : zero) next.push_back(r);

    for (std::size_t ip = 0; ip < positive.size(); ++ip)
      for (std::size_t in = 0; in < negative.size(); ++in) {
        const auto& p = positive[ip];
        const auto& n = negative[in];
        std::vector<bool> common(nc, false);
        for (std::size_t c = 0; c < ci; ++c)
          if (p.zero[c] && n.zero[c]) common[c] = true;
        // Combinatorial adjacency: no third ray is tight on all common constraints.
        bool adjacent = true;
        for (const auto& r : rays) {
          if (r.v == p.v || r.v == n.v) continue;
          bool superset = true;
          for (std::size_t c = 0; c < ci && superset; ++c)
            if (common[c] && !r.zero[c]) superset = false;
          if (superset) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        WorkingRay w{combine(pos_val[ip], n.v, neg_val[in], p.v), common};
        w.zero[ci] = true;
        if (!is_zero_vector(w.v)) next.push_back(std::move(w));
      }
    rays = std::move(next);
  }

  ConeGenerators out;
  out.lineality = std::move(lineality);
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  std::sort(out.rays.begin(), out.rays.end());
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  return out;
}

Polytope::Polytope(std::size_t ambient_dim, std::vector<Inequality> inequalities)
    : ambient_dim_(ambient_dim), inequalities_(std::move(inequalities)) {
  // Homogenize: (a, -b)·(y, t) >= 0 and t >= 0, with b cleared to integers.
  std::vector<IntVector> constraints;
  for (const auto& ineq : inequalities_) {
    if (ineq.normal.size() != ambient_dim_) throw Error(ErrorKind::ShapeError, "inequality normal has wrong length");
    BigInt den = denominator(ineq.rhs);
    IntVector c(ambient_dim_ + 1);
    for (std::size_t i = 0; i < ambient_dim_; ++i) c[i] = ineq.normal[i] * den;
    c[ambient_dim_] = -numerator(ineq.rhs);
    constraints.push_back(std::move(c));
  }
  IntVector t_nonneg(ambient_dim_ + 1, BigInt(0));
  t_nonneg[ambient_dim_] = 1;
  constraints.insert(constraints.begin(), t_nonneg);

  auto gens = cone_generators(constraints, ambient_dim_ + 1);
  for (const auto& l : gens.lineality) lineality_.push_back(IntVector(l.begin(), l.end() - 1));
  for (const auto& r : gens.rays) {
    const BigInt& t = r[ambient_dim_];
    if (t > 0) {
      QVector y(ambient_dim_);
      for (std::size_t i = 0; i < ambient_dim_; ++i) y[i] = Rational(r[i], t);
      vertices_.push_back(std::move(y));
    } else {
      rays_.push_back(IntVector(r.begin(), r.end() - 1));
    }
  }
  std::sort(vertices_.begin(), vertices_.end());
  std::sort(rays_.begin(), rays_.end());
  if (vertices_.empty()) {
    rays_.clear();
    lineality_.clear();
    dimension_ = -1;
    return;
  }
  std::vector<QVector> dirs;
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    QVector d(ambient_dim_);
    for (std::size_t j = 0; j < ambient_dim_; ++j) d[j] = vertices_[i][j] - vertices_[0][j];
    dirs.push_back(std::move(d));
  }
  for (const auto& r : rays_) dirs.push_back(to_qvector(r));
  for (const auto& l : lineality_) dirs.push_back(to_qvector(l));
  dimension_ = dirs.empty() ? 0 : static_cast<int>(rank(from_columns(dirs, ambient_dim_)));
}

Polytope Polytope::from_generators(std::size_t ambient_dim, const std::vector<QVector>& points,
                                   const std::vector<IntVector>& rays, const std::vector<IntVector>& lines) {
  if (points.empty()) throw Error(ErrorKind::EmptyPolytope, "from_generators needs at least one point");
  // Dual description: (a, -b) with a·p - b >= 0, a·r >= 0, a·l = 0.
  std::vector<IntVector> constraints;
  for (const auto& p : points) {
    QVector hp(p);
    hp.push_back(Rational(-1));
    constraints.push_back(primitive(hp));
  }
  auto extend = [&](const IntVector& r) {
    IntVector c = r;
    c.push_back(BigInt(0));
    return c;
  };
  for (const auto& r : rays) constraints.push_back(extend(r));
  for (const auto& l : lines) {
    constraints.push_back(extend(l));
    IntVector neg = extend(l);
    for (auto& x : neg) x = -x;
    constraints.push_back(std::move(neg));
  }
  auto dual = cone_generators(constraints, ambient_dim + 1);
  std::vector<Inequality> ineqs;
  auto to_ineq = [&](const IntVector& g) {
    Inequality q;
    q.normal.assign(g.begin(), g.end() - 1);
    q.rhs = Rational(g[ambient_dim]);
    return q;
  };
  for (const auto& g : dual.rays) {
    // The homogenizing direction (0,...,0,-1)·... gives the trivial 0 >= -1.
    bool trivial = std::all_of(g.begin(), g.end() - 1, [](const BigInt& x) { return x == 0; });
    if (!trivial) ineqs.push_back(to_ineq(g));
  }
  for (const auto& g : dual.lineality) {
    ineqs.push_back(to_ineq(g));
    IntVector neg = g;
    for (auto& x : neg) x = -x;
    ineqs.push_back(to_ineq(neg));
  }
  return Polytope(ambient_dim, std::move(ineqs));
}

Polytope Polytope::whole_space(std::size_t ambient_dim) { return Polytope(ambient_dim, {}); }

Polytope Polytope::point(const QVector& p) {
  std::vector<Inequality> ineqs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    IntVector e(p.size(), BigInt(0));
    e[i] = 1;
    ineqs.push_back({e, p[i], false});
    e[i] = -1;
    ineqs.push_back({e, -p[i], false});
  }
  return Polytope(p.size(), std::move(ineqs));
}

Polytope Polytope::box(const std::vector<std::pair<std::optional<Rational>, std::optional<Rational>>>& bounds) {
  std::vector<Inequality> ineqs;
  const std::size_t m = bounds.size();
  for (std::size_t i = 0; i < m; ++i) {
    IntVector e(m, BigInt(0));
    if (bounds[i].first) {
      e[i] = 1;
      ineqs.push_back({e, *bounds[i].first, false});
    }
    if (bounds[i].second) {
      e[i] = -1;
      ineqs.push_back({e, -*bounds[i].second, false});
    }
  }
  return Polytope(m, std::move(ineqs));
}

Polytope Polytope::positive_orthant(std::size_t ambient_dim) {
  std::vector<std::pair<std::optional<Rational>, std::optional<Rational>>> b(ambient_dim,
                                                                             {Rational(0), std::nullopt});
  return box(b);
}

bool Polytope::contains(const QVector& y) const {
  if (y.size() != ambient_dim_) throw Error(ErrorKind::ShapeError, "point has wrong dimension");
  for (const auto& q : inequalities_) {
    Rational s = 0;
    for (std::size_t i = 0; i < ambient_dim_; ++i) s += Rational(q.normal[i]) * y[i];
    if (s < q.rhs) return false;
  }
  return true;
}

bool Polytope::recedes_along(const IntVector& v) const {
  for (const auto& q : inequalities_)
    if (int_dot(q.normal, v) < 0) return false;
  return true;
}

Polytope Polytope::intersect(const Polytope& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw Error(ErrorKind::ShapeError, "intersecting polytopes of different dimension");
  auto ineqs = inequalities_;
  ineqs.insert(ineqs.end(), other.inequalities_.begin(), other.inequalities_.end());
  return Polytope(ambient_dim_, std::move(ineqs));
}

std::vector<std::size_t> Polytope::tight_at(const QVector& y) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < inequalities_.size(); ++k) {
    const auto& q = inequalities_[k];
    Rational s = 0;
    for (std::size_t i = 0; i < ambient_dim_; ++i) s += Rational(q.normal[i]) * y[i];
    if (s == q.rhs) out.push_back(k);
  }
  return out;
}

std::string Polytope::describe() const {
  std::ostringstream os;
  os << "{y in Q^" << ambient_dim_ << " :";
  if (inequalities_.empty()) os << " all";
  for (std::size_t k = 0; k < inequalities_.size(); ++k) {
    const auto& q = inequalities_[k];
    os << (k ? ", " : " ");
    for (std::size_t i = 0; i < ambient_dim_; ++i) os << (i ? " " : "") << q.normal[i];
    os << (q.open ? " > " : " >= ") << q.rhs;
  }
  os << "}";
  return os.str();
}

Polytope product(const Polytope& a, const Polytope& b) {
  const std::size_t m = a.ambient_dim() + b.ambient_dim();
  std::vector<Inequality> ineqs;
  for (const auto& q : a.inequalities()) {
    Inequality r = q;
    r.normal.resize(m, BigInt(0));
    ineqs.push_back(std::move(r));
  }
  for (const auto& q : b.inequalities()) {
    Inequality r;
    r.normal.assign(a.ambient_dim(), BigInt(0));
    r.normal.insert(r.normal.end(), q.normal.begin(), q.normal.end());
    r.rhs = q.rhs;
    r.open = q.open;
    ineqs.push_back(std::move(r));
  }
  return Polytope(m, std::move(ineqs));
}

namespace {

bool subset(const std::vector<std::size_t>& small, const std::vector<std::size_t>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

int face_dimension(const Polytope& p, const std::vector<std::size_t>& verts, const std::vector<std::size_t>& rays) {
  const std::size_t m = p.ambient_dim();
  std::vector<QVector> dirs;
  for (std::size_t i = 1; i < verts.size(); ++i) {
    QVector d(m);
    for (std::size_t j = 0; j < m; ++j) d[j] = p.vertices()[verts[i]][j] - p.vertices()[verts[0]][j];
    dirs.push_back(std::move(d));
  }
  for (auto r : rays) dirs.push_back(to_qvector(p.rays()[r]));
  for (const auto& l : p.lineality()) dirs.push_back(to_qvector(l));
  if (dirs.empty()) return 0;
  return static_cast<int>(rank(from_columns(dirs, m)));
}

}  // namespace

FaceLattice face_lattice(const Polytope& p) {
  if (p.is_empty()) throw Error(ErrorKind::EmptyPolytope, "face lattice of an empty polytope");
  const auto& ineqs = p.inequalities();
  const std::size_t m = p.ambient_dim();

  // Tightness of every (inequality, generator) pair.
  std::vector<std::vector<bool>> vtight(ineqs.size()), rtight(ineqs.size());
  for (std::size_t k = 0; k < ineqs.size(); ++k) {
    for (const auto& v : p.vertices()) {
      Rational s = 0;
      for (std::size_t i = 0; i < m; ++i) s += Rational(ineqs[k].normal[i]) * v[i];
      vtight[k].push_back(s == ineqs[k].rhs);
    }
    for (const auto& r : p.rays()) rtight[k].push_back(int_dot(ineqs[k].normal, r) == 0);
  }

  using Key = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;
  auto closure = [&](const Key& gens) {
    std::vector<std::size_t> tight;
    for (std::size_t k = 0; k < ineqs.size(); ++k) {
      bool all = true;
      for (auto v : gens.first) all = all && vtight[k][v];
      for (auto r : gens.second) all = all && rtight[k][r];
      if (all) tight.push_back(k);
    }
    return tight;
  };
  auto generators_of = [&](const std::vector<std::size_t>& tight) {
    Key g;
    for (std::size_t v = 0; v < p.vertices().size(); ++v) {
      bool all = true;
      for (auto k : tight) all = all && vtight[k][v];
      if (all) g.first.push_back(v);
    }
    for (std::size_t r = 0; r < p.rays().size(); ++r) {
      bool all = true;
      for (auto k : tight) all = all && rtight[k][r];
      if (all) g.second.push_back(r);
    }
    return g;
  };

  std::map<Key, std::vector<std::size_t>> seen;
  std::vector<Key> queue;
  Key top;
  for (std::size_t v = 0; v < p.vertices().size(); ++v) top.first.push_back(v);
  for (std::size_t r = 0; r < p.rays().size(); ++r) top.second.push_back(r);
  seen[top] = closure(top);
  queue.push_back(top);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Key current = queue[qi];
    const auto tight = seen[current];
    for (std::size_t k = 0; k < ineqs.size(); ++k) {
      if (std::binary_search(tight.begin(), tight.end(), k)) continue;
      auto t2 = tight;
      t2.push_back(k);
      std::sort(t2.begin(), t2.end());
      Key g = generators_of(t2);
      if (g.first.empty()) continue;
      if (seen.count(g)) continue;
      seen[g] = closure(g);
      queue.push_back(g);
    }
  }

  FaceLattice lattice;
  for (const auto& [gens, tight] : seen) {
    Face f;
    f.tight = tight;
    f.vertices = gens.first;
    f.rays = gens.second;
    f.dimension = face_dimension(p, f.vertices, f.rays);
    lattice.faces.push_back(std::move(f));
  }
  std::sort(lattice.faces.begin(), lattice.faces.end(), [](const Face& a, const Face& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    if (a.vertices != b.vertices) return a.vertices < b.vertices;
    return a.rays < b.rays;
  });
  lattice.covers.resize(lattice.faces.size());
  for (std::size_t i = 0; i < lattice.faces.size(); ++i)
    for (std::size_t j = 0; j < lattice.faces.size(); ++j)
      if (lattice.faces[j].dimension == lattice.faces[i].dimension + 1 && lattice.contains(j, i))
        lattice.covers[i].push_back(j);
  return lattice;
}

bool FaceLattice::contains(std::size_t outer, std::size_t inner) const {
  return subset(faces[inner].vertices, faces[outer].vertices) && subset(faces[inner].rays, faces[outer].rays);
}

std::vector<std::size_t> FaceLattice::corners() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces[i].is_corner()) out.push_back(i);
  return out;
}

std::vector<std::size_t> FaceLattice::f_vector() const {
  int top = faces.empty() ? -1 : faces.back().dimension;
  std::vector<std::size_t> f(static_cast<std::size_t>(top + 1), 0);
  for (const auto& face : faces) ++f[static_cast<std::size_t>(face.dimension)];
  return f;
}

std::size_t FaceLattice::join(std::size_t a, std::size_t b) const {
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (contains(i, a) && contains(i, b)) return i;
  return faces.size() - 1;
}

std::optional<std::size_t> FaceLattice::meet(std::size_t a, std::size_t b) const {
  for (std::size_t i = faces.size(); i-- > 0;)
    if (contains(a, i) && contains(b, i)) return i;
  return std::nullopt;
}

Polytope face_polytope(const Polytope& p, const Face& f) {
  auto ineqs = p.inequalities();
  for (auto k : f.tight) {
    Inequality rev = p.inequalities()[k];
    for (auto& x : rev.normal) x = -x;
    rev.rhs = -rev.rhs;
    rev.open = false;
    ineqs.push_back(std::move(rev));
  }
  return Polytope(p.ambient_dim(), std::move(ineqs));
}

SaturatedLattice face_direction_lattice(const Polytope& p, const Face& f) {
  const std::size_t m = p.ambient_dim();
  std::vector<IntVector> gens;
  for (std::size_t i = 1; i < f.vertices.size(); ++i) {
    QVector d(m);
    for (std::size_t j = 0; j < m; ++j) d[j] = p.vertices()[f.vertices[i]][j] - p.vertices()[f.vertices[0]][j];
    gens.push_back(primitive(d));
  }
  for (auto r : f.rays) gens.push_back(p.rays()[r]);
  for (const auto& l : p.lineality()) gens.push_back(l);
  return saturate(gens, m);
}

QVector relative_interior_point(const Polytope& p, const Face& f) {
  const std::size_t m = p.ambient_dim();
  QVector y(m, Rational(0));
  for (auto v : f.vertices)
    for (std::size_t j = 0; j < m; ++j) y[j] += p.vertices()[v][j];
  for (auto& x : y) x /= Rational(static_cast<long>(f.vertices.size()));
  for (auto r : f.rays)
    for (std::size_t j = 0; j < m; ++j) y[j] += Rational(p.rays()[r][j]);
  return y;
}

UnboundedSpan unbounded_span(const Polytope& p) {
  if (p.is_empty()) throw Error(ErrorKind::EmptyPolytope, "unbounded span of an empty polytope");
  std::vector<IntVector> gens = p.rays();
  gens.insert(gens.end(), p.lineality().begin(), p.lineality().end());
  UnboundedSpan out;
  out.lattice = saturate(gens, p.ambient_dim());
  out.k = out.lattice.rank;
  return out;
}

bool is_complete(const Polytope& p) {
  return std::none_of(p.inequalities().begin(), p.inequalities().end(), [](const Inequality& q) { return q.open; });
}

bool contains_lines(const Polytope& p) { return !p.lineality().empty(); }

}  // namespace exdr
