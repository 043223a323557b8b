#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "exdr/integer_matrix.hpp"
#include "exdr/matrix.hpp"

namespace exdr {

/// Closed half-space normal·y >= rhs. `open` marks a facet that the input
/// declared removed; the geometry stays closed and the marker only feeds
/// is_complete.
struct Inequality {
  IntVector normal;
  Rational rhs = 0;
  bool open = false;

  friend bool operator==(const Inequality&, const Inequality&) = default;
};

/// Generators of the cone {x : c·x >= 0 for every constraint c}.
/// `rays` are the extreme rays of the cone modulo its lineality space; both
/// lists hold primitive integer vectors in a deterministic order.
struct ConeGenerators {
  std::vector<IntVector> lineality;
  std::vector<IntVector> rays;
};

/// Incremental double description (Motzkin). Constraints are processed in
/// the given order; the first lineality vector not annihilated by the next
/// constraint is the pivot.
ConeGenerators cone_generators(const std::vector<IntVector>& constraints, std::size_t dim);

/// Rational polyhedron in Q^m given by inequalities, with its vertex/ray
/// description computed once at construction.
class Polytope {
 public:
  Polytope() = default;
  Polytope(std::size_t ambient_dim, std::vector<Inequality> inequalities);

  /// H-description of conv(points) + cone(rays) + span(lines).
  static Polytope from_generators(std::size_t ambient_dim, const std::vector<QVector>& points,
                                  const std::vector<IntVector>& rays,
                                  const std::vector<IntVector>& lines = {});
  static Polytope whole_space(std::size_t ambient_dim);
  static Polytope point(const QVector& p);
  /// Product of intervals; `std::nullopt` bounds are infinite.
  static Polytope box(const std::vector<std::pair<std::optional<Rational>, std::optional<Rational>>>& bounds);
  static Polytope positive_orthant(std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  const std::vector<Inequality>& inequalities() const noexcept { return inequalities_; }

  bool is_empty() const noexcept { return vertices_.empty(); }
  /// One point per minimal face; these are the vertices when P is pointed.
  const std::vector<QVector>& vertices() const noexcept { return vertices_; }
  /// Extreme rays of the recession cone modulo its lineality space.
  const std::vector<IntVector>& rays() const noexcept { return rays_; }
  const std::vector<IntVector>& lineality() const noexcept { return lineality_; }

  bool is_bounded() const noexcept { return rays_.empty() && lineality_.empty(); }
  bool is_pointed() const noexcept { return lineality_.empty(); }
  /// Affine dimension (-1 for the empty polytope).
  int dimension() const noexcept { return dimension_; }

  bool contains(const QVector& y) const;
  /// Membership test for the recession cone.
  bool recedes_along(const IntVector& v) const;

  /// Same geometry, additional constraints.
  Polytope intersect(const Polytope& other) const;

  /// Inequalities tight at y (indices into inequalities()).
  std::vector<std::size_t> tight_at(const QVector& y) const;

  std::string describe() const;

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.inequalities_ == b.inequalities_;
  }

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<Inequality> inequalities_;
  std::vector<QVector> vertices_;
  std::vector<IntVector> rays_;
  std::vector<IntVector> lineality_;
  int dimension_ = -1;
};

Polytope product(const Polytope& a, const Polytope& b);

/// A face of a polytope, described by the inequalities tight on it and by
/// the generators (indices into the parent's vertices()/rays()) it contains.
/// Lineality is shared by every face.
struct Face {
  std::vector<std::size_t> tight;
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> rays;
  int dimension = 0;

  /// Strata over zero-dimensional faces are the smooth ones.
  bool is_corner() const noexcept { return dimension == 0; }
};

struct FaceLattice {
  std::vector<Face> faces;                       // sorted by dimension, then by vertex/ray sets
  std::vector<std::vector<std::size_t>> covers;  // covers[i]: faces of dimension dim(i)+1 containing face i

  std::vector<std::size_t> corners() const;
  /// f-vector (count by dimension 0..dim P); faces of dimension < 0 are not stored.
  std::vector<std::size_t> f_vector() const;
  /// Index of the smallest face containing both, i.e. the join.
  std::size_t join(std::size_t a, std::size_t b) const;
  /// Index of the meet, or nullopt when the intersection is empty.
  std::optional<std::size_t> meet(std::size_t a, std::size_t b) const;
  bool contains(std::size_t outer, std::size_t inner) const;
};

/// All nonempty faces, ordered by inclusion. Throws EmptyPolytope.
FaceLattice face_lattice(const Polytope& p);

/// The face itself as a polytope (its tight inequalities become equalities).
Polytope face_polytope(const Polytope& p, const Face& f);

/// Saturated integer direction lattice of a face (differences of its points,
/// its rays and the lineality space).
SaturatedLattice face_direction_lattice(const Polytope& p, const Face& f);

/// A point in the relative interior of a face.
QVector relative_interior_point(const Polytope& p, const Face& f);

struct UnboundedSpan {
  std::size_t k = 0;
  SaturatedLattice lattice;
};

/// Saturation of the lattice spanned by the recession cone; k is its rank.
UnboundedSpan unbounded_span(const Polytope& p);

/// True when no facet has been declared open.
bool is_complete(const Polytope& p);
bool contains_lines(const Polytope& p);

}  // namespace exdr
