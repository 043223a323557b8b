#include "exdr/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "exdr/integer_matrix.hpp"
#include "exdr/linalg.hpp"

namespace exdr {

namespace {

IntVector primitive_int(const IntVector& v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x);
  IntVector out = v;
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

Polytope cone_from_rays(std::size_t n, const std::vector<IntVector>& rays) {
  return Polytope::from_generators(n, {QVector(n, Rational(0))}, rays);
}

}  // namespace

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Fan::Fan(std::size_t ambient_dim, const std::vector<std::vector<IntVector>>& maximal_cone_generators)
    : ambient_dim_(ambient_dim) {
  if (maximal_cone_generators.empty()) throw Error(ErrorKind::UnsupportedFan, "fan without cones");
  std::vector<Polytope> polys;
  std::set<IntVector> ray_set;
  for (const auto& gens : maximal_cone_generators) {
    std::vector<IntVector> prim;
    for (const auto& g : gens) {
      if (g.size() != ambient_dim) throw Error(ErrorKind::ShapeError, "cone generator has wrong dimension");
      if (std::all_of(g.begin(), g.end(), [](const BigInt& x) { return x == 0; })) continue;
      prim.push_back(primitive_int(g));
    }
    Polytope p = cone_from_rays(ambient_dim, prim);
    if (!p.is_pointed()) throw Error(ErrorKind::UnsupportedFan, "cone " + p.describe() + " contains a line");
    for (const auto& r : p.rays()) ray_set.insert(r);
    polys.push_back(std::move(p));
  }
  rays_.assign(ray_set.begin(), ray_set.end());
  auto global_index = [&](const IntVector& r) {
    return static_cast<std::size_t>(std::lower_bound(rays_.begin(), rays_.end(), r) - rays_.begin());
  };

  std::map<std::vector<std::size_t>, int> all_cones;
  std::vector<std::set<std::vector<std::size_t>>> faces_of(polys.size());
  std::vector<std::vector<std::size_t>> top_rays(polys.size());
  for (std::size_t c = 0; c < polys.size(); ++c) {
    auto lattice = face_lattice(polys[c]);
    for (const auto& f : lattice.faces) {
      std::vector<std::size_t> rs;
      for (auto r : f.rays) rs.push_back(global_index(polys[c].rays()[r]));
      std::sort(rs.begin(), rs.end());
      all_cones[rs] = f.dimension;
      faces_of[c].insert(rs);
    }
    for (const auto& r : polys[c].rays()) top_rays[c].push_back(global_index(r));
    std::sort(top_rays[c].begin(), top_rays[c].end());
  }

  // Pairwise intersections must be common faces.
  for (std::size_t a = 0; a < polys.size(); ++a)
    for (std::size_t b = a + 1; b < polys.size(); ++b) {
      Polytope meet = polys[a].intersect(polys[b]);
      std::vector<std::size_t> rs;
      for (const auto& r : meet.rays()) {
        auto it = std::lower_bound(rays_.begin(), rays_.end(), r);
        if (it == rays_.end() || *it != r)
          throw Error(ErrorKind::UnsupportedFan, "cones " + std::to_string(a) + " and " + std::to_string(b) +
                                                     " meet outside a common face");
        rs.push_back(static_cast<std::size_t>(it - rays_.begin()));
      }
      std::sort(rs.begin(), rs.end());
      if (!faces_of[a].count(rs) || !faces_of[b].count(rs))
        throw Error(ErrorKind::UnsupportedFan, "cones " + std::to_string(a) + " and " + std::to_string(b) +
                                                   " do not meet in a common face");
    }

  for (const auto& [rs, dim] : all_cones) cones_.push_back({rs, dim});
  std::sort(cones_.begin(), cones_.end(), [](const Cone& x, const Cone& y) {
    if (x.dimension != y.dimension) return x.dimension < y.dimension;
    return x.rays < y.rays;
  });
  std::set<std::vector<std::size_t>> seen_max;
  for (std::size_t c = 0; c < polys.size(); ++c) {
    bool contained = false;
    for (std::size_t d = 0; d < polys.size() && !contained; ++d)
      if (d != c && top_rays[c] != top_rays[d] &&
          std::includes(top_rays[d].begin(), top_rays[d].end(), top_rays[c].begin(), top_rays[c].end()))
        contained = true;
    if (!contained && seen_max.insert(top_rays[c]).second) maximal_.push_back(find_cone(top_rays[c]));
  }
  std::sort(maximal_.begin(), maximal_.end());
}

Polytope Fan::cone_polytope(std::size_t cone_index) const {
  std::vector<IntVector> gens;
  for (auto r : cones_.at(cone_index).rays) gens.push_back(rays_[r]);
  return cone_from_rays(ambient_dim_, gens);
}

std::size_t Fan::find_cone(const std::vector<std::size_t>& rays) const {
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (cones_[i].rays == rays) return i;
  return cones_.size();
}

std::size_t Fan::intersection(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> common;
  const auto& ra = cones_.at(a).rays;
  const auto& rb = cones_.at(b).rays;
  std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(common));
  // Cones meet in a common face, which is spanned by the shared rays.
  return find_cone(common);
}

std::vector<std::size_t> Fan::cone_counts() const {
  std::vector<std::size_t> d(ambient_dim_ + 1, 0);
  for (const auto& c : cones_) ++d[static_cast<std::size_t>(c.dimension)];
  return d;
}

bool Fan::is_simplicial() const {
  return std::all_of(cones_.begin(), cones_.end(),
                     [](const Cone& c) { return static_cast<int>(c.rays.size()) == c.dimension; });
}

bool Fan::is_smooth() const {
  if (!is_simplicial()) return false;
  for (auto mi : maximal_) {
    const auto& c = cones_[mi];
    std::vector<IntVector> gens;
    for (auto r : c.rays) gens.push_back(rays_[r]);
    // A simplicial cone is smooth iff its rays extend to a basis of Z^n,
    // i.e. they span a saturated lattice with all invariant factors 1.
    IntMatrix m(ambient_dim_, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
      for (std::size_t i = 0; i < ambient_dim_; ++i) m(i, j) = gens[j][i];
    auto snf = smith_normal_form(m);
    for (std::size_t i = 0; i < snf.rank; ++i)
      if (snf.diagonal(i, i) != 1) return false;
  }
  return true;
}

bool Fan::is_complete() const {
  const std::size_t n = ambient_dim_;
  if (n == 0) return true;
  for (auto mi : maximal_)
    if (cones_[mi].dimension != static_cast<int>(n)) return false;
  // Every wall lies in exactly two maximal cones.
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    if (cones_[i].dimension != static_cast<int>(n) - 1) continue;
    int count = 0;
    for (auto mi : maximal_)
      if (std::includes(cones_[mi].rays.begin(), cones_[mi].rays.end(), cones_[i].rays.begin(), cones_[i].rays.end()))
        ++count;
    if (count != 2) return false;
  }
  // Certificate: generic directions each land in exactly one maximal cone,
  // which pins the covering degree of the closed pseudomanifold to one.
  std::vector<Polytope> polys;
  for (auto mi : maximal_) polys.push_back(cone_polytope(mi));
  unsigned long long state = 0x9e3779b97f4a7c15ULL;
  int accepted = 0;
  for (int attempt = 0; attempt < 400 && accepted < static_cast<int>(2 * n + 8); ++attempt) {
    QVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      long x = static_cast<long>((state >> 33) % 195) - 97;
      v[i] = Rational(x == 0 ? 1 : x);
    }
    bool generic = true;
    for (const auto& p : polys)
      for (const auto& q : p.inequalities()) {
        Rational s = 0;
        for (std::size_t i = 0; i < n; ++i) s += Rational(q.normal[i]) * v[i];
        if (s == 0) generic = false;
      }
    if (!generic) continue;
    int hits = 0;
    for (const auto& p : polys)
      if (p.contains(v)) ++hits;
    if (hits != 1) return false;
    ++accepted;
  }
  return accepted > 0;
}

std::vector<long> danilov_betti(const Fan& fan) {
  if (!fan.is_complete()) throw Error(ErrorKind::UnsupportedFan, "fan is not complete");
  if (!fan.is_smooth()) throw Error(ErrorKind::UnsupportedFan, "fan is not smooth");
  const long n = static_cast<long>(fan.ambient_dim());
  auto d = fan.cone_counts();
  std::vector<long> betti(static_cast<std::size_t>(2 * n + 1), 0);
  for (long k = 0; k <= n; ++k) {
    long b = 0;
    for (long i = k; i <= n; ++i) {
      long term = binomial(i, k) * static_cast<long>(d[static_cast<std::size_t>(n - i)]);
      b += ((i - k) % 2 == 0) ? term : -term;
    }
    betti[static_cast<std::size_t>(2 * k)] = b;
  }
  return betti;
}

}  // namespace exdr
