#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ortho/normed_space.hpp"
#include "ortho/orthogonality.hpp"
#include "ortho/vector.hpp"

namespace ortho {

// Linear map between two finite-dimensional normed spaces.
// Entries are stored column major: entry(i, j) = m[i + j * rows].
class LinearOperator {
 public:
  LinearOperator(NormedSpace domain, NormedSpace codomain, std::vector<double> column_major);

  static LinearOperator identity(const NormedSpace& space);
  static LinearOperator diagonal(const NormedSpace& space, const Vector& coeffs);

  const NormedSpace& domain() const { return domain_; }
  const NormedSpace& codomain() const { return codomain_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double entry(int i, int j) const { return m_[static_cast<std::size_t>(i + j * rows_)]; }
  const std::vector<double>& entries() const { return m_; }

  Vector apply(const Vector& x) const;

 private:
  NormedSpace domain_;
  NormedSpace codomain_;
  int rows_;
  int cols_;
  std::vector<double> m_;
};

struct NormEstimate {
  enum class Method { Exact, Sampled };
  double value = 0.0;
  Method method = Method::Sampled;
};

// Deviation of T from a scalar multiple of an isometry. With scale = ||T||,
// the normalized map T/scale satisfies
//   (1 - delta1) ||x|| <= ||(T/scale) x|| <= (1 + delta2) ||x||
// so delta2 is 0 by construction and 1 - delta1 is the lower/upper ratio.
struct OperatorProfile {
  NormEstimate op_norm;
  NormEstimate lower_bound;
  bool injective = false;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double scale = 0.0;
};

enum class Direction { Preserve, Reverse };

// Worst measured approximate-orthogonality parameter over image pairs.
struct PreservationReport {
  OrthoRelation relation;
  Direction direction = Direction::Preserve;
  double eta_hat = 0.0;
  std::pair<Vector, Vector> worst_pair;  // domain-side pair attaining eta_hat
  int samples_used = 0;
  int skipped_degenerate = 0;
};

struct FloorCheck {
  bool pass = false;
  double worst_ratio = 0.0;  // smallest ||Tx|| / (||T|| ||x||) found
  double floor = 0.0;
};

// ||T||, exact where the domain geometry allows it, otherwise sampled and
// polished. Lower bound is the infimum of ||Tx|| over the unit sphere.
NormEstimate operator_norm(const LinearOperator& op, std::uint64_t seed = 2026);
NormEstimate lower_bound(const LinearOperator& op, std::uint64_t seed = 2026);
OperatorProfile isometry_deviation(const LinearOperator& op, std::uint64_t seed = 2026);

// eta_hat over sampled pairs x rel-orthogonal y: Preserve measures the image
// pair (Tx, Ty), Reverse measures (Ty, Tx). Pairs whose images nearly vanish
// are skipped and counted; if nothing survives the operator is degenerate on
// the sampled set and degenerate_error is thrown.
PreservationReport preservation_constant(const LinearOperator& op, const OrthoRelation& rel,
                                         std::uint64_t seed, int count);
PreservationReport reversal_constant(const LinearOperator& op, const OrthoRelation& rel,
                                     std::uint64_t seed, int count);
PreservationReport local_preservation_constant(const LinearOperator& op,
                                               const OrthoRelation& rel, const Vector& x,
                                               std::uint64_t seed, int count);

// Guaranteed eta for images of rel-orthogonal pairs under a map with the
// given deviation profile, and the perturbed variant for S = T + E with
// ||E|| <= eps ||T||. Throws degenerate_bound_error when the perturbation
// is too large for the bound to say anything.
double isometry_eta_bound(const OrthoRelation& rel, double delta1, double delta2);
double perturbed_eta_bound(const OrthoRelation& rel, double delta1, double delta2, double eps);

// Lower bound on ||Tx|| / (||T|| ||x||) implied by eta-approximate
// preservation, and a sampled check of it for a concrete operator.
double bounded_below_floor(double eta);
FloorCheck verify_floor(const LinearOperator& op, double eta, std::uint64_t seed = 2026);

}  // namespace ortho
