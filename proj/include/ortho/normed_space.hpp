#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ortho/vector.hpp"

namespace ortho {

enum class SpaceKind { Lp, Euclidean, Polyhedral };

class NormedSpace;

// A dual-unit functional paired with the point it supports. coeffs acts by
// the standard pairing f(x) = sum_i f_i x_i.
struct SupportFunctional {
  Vector coeffs;
  const NormedSpace* space = nullptr;

  double operator()(const Vector& x) const { return Vector::dot(coeffs, x); }
};

// Vertex list of the support face J(x) = {f in S_X* : f(x) = ||x||}.
struct SupportSet {
  Vector point;
  std::vector<SupportFunctional> vertices;
};

// Finite-dimensional real normed space. Three families:
//   lp(p, dim)          1 <= p <= inf; p > 64 is evaluated as l_inf
//   euclidean(dim)      l_2 with closed forms keyed on the kind
//   polyhedral(dim, A)  ||x|| = max_i |<a_i, x>|; the a_i must span
class NormedSpace {
 public:
  static NormedSpace lp(double p, int dim);
  static NormedSpace euclidean(int dim);
  static NormedSpace polyhedral(int dim, std::vector<Vector> functionals);

  int dim() const { return dim_; }
  SpaceKind kind() const { return kind_; }
  double p() const { return p_; }
  const std::vector<Vector>& functionals() const { return functionals_; }

  // true for euclidean(n) and lp(2, n); selects inner-product closed forms
  bool euclidean_like() const {
    return kind_ == SpaceKind::Euclidean || (kind_ == SpaceKind::Lp && p_ == 2.0);
  }

  double norm(const Vector& x) const;
  Vector normalized(const Vector& x) const;

  // norm of f as an element of the dual space. Exact for lp, euclidean and
  // any polyhedral ball whose vertex enumeration fits the construction
  // budget; past the budget it is sampled + refined to ~1e-8.
  double dual_norm(const Vector& f) const;

  // Vertex list of J(x). l_1 points with z zero coordinates have 2^z
  // vertices; z > 20 raises capacity_error. x must be nonzero.
  SupportSet support_set(const Vector& x) const;

  bool is_smooth_point(const Vector& x) const;

  // count unit vectors from normalized gaussian draws; stream i depends only
  // on (seed, i)
  std::vector<Vector> sample_sphere(std::uint64_t seed, int count) const;

  // unit x attaining f(x) = dual_norm(f); f must be nonzero. Coordinate ties
  // are broken toward the lowest index. Same exactness caveats as dual_norm.
  Vector norming_vector(const Vector& f) const;

  // vertices of the unit ball polytope (polyhedral spaces only;
  // counterclockwise in 2-D, lexicographic otherwise). Throws capacity_error
  // when the enumeration was over budget at construction.
  const std::vector<Vector>& ball_vertices() const;

  // round-trippable text form, e.g. "lp:3:2", "poly:2:[1,0;0,1;1,1]"
  std::string describe() const;

 private:
  NormedSpace(SpaceKind kind, int dim, double p, std::vector<Vector> functionals);

  void enumerate_ball_vertices_2d();
  void enumerate_ball_vertices_nd();
  double polyhedral_dual_sampled(const Vector& f, Vector* arg) const;

  SpaceKind kind_;
  int dim_;
  double p_ = 0.0;                    // Lp only
  std::vector<Vector> functionals_;   // polyhedral only
  std::vector<Vector> ball_vertices_; // polyhedral; empty if over budget
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace ortho
