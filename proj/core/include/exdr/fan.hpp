#pragma once

#include <vector>

#include "exdr/polytope.hpp"

namespace exdr {

struct Cone {
  std::vector<std::size_t> rays;  // sorted indices into Fan::rays()
  int dimension = 0;
};

/// Rational polyhedral fan given by its maximal cones. The constructor closes
/// the cone list under faces and checks that cones are pointed and meet in
/// common faces; completeness is a separate query.
class Fan {
 public:
  Fan(std::size_t ambient_dim, const std::vector<std::vector<IntVector>>& maximal_cone_generators);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  const std::vector<IntVector>& rays() const noexcept { return rays_; }
  /// All cones, sorted by dimension then by ray set; index 0 is the origin.
  const std::vector<Cone>& cones() const noexcept { return cones_; }
  const std::vector<std::size_t>& maximal_cones() const noexcept { return maximal_; }

  /// The cone as a polytope in Q^n (apex at the origin).
  Polytope cone_polytope(std::size_t cone_index) const;

  /// Index of the cone with exactly this ray set, or cones().size().
  std::size_t find_cone(const std::vector<std::size_t>& rays) const;
  /// Index of the intersection of two cones (always a common face).
  std::size_t intersection(std::size_t a, std::size_t b) const;

  /// d_j = number of j-dimensional cones, j = 0..n.
  std::vector<std::size_t> cone_counts() const;

  bool is_complete() const;
  bool is_simplicial() const;
  /// Every maximal cone is generated by a basis of Z^n.
  bool is_smooth() const;

 private:
  std::size_t ambient_dim_;
  std::vector<IntVector> rays_;
  std::vector<Cone> cones_;
  std::vector<std::size_t> maximal_;
};

/// Betti numbers b_0..b_{2n} of the smooth complete toric variety of the fan
/// (odd entries zero), from the cone counts:
/// b_{2k} = sum_{i=k}^{n} (-1)^{i-k} C(i,k) d_{n-i}.
/// Throws UnsupportedFan unless the fan is complete and smooth.
std::vector<long> danilov_betti(const Fan& fan);

long binomial(long n, long k);

}  // namespace exdr
