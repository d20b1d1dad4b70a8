#pragma once

#include <cstdint>
#include <vector>

#include "ortho/normed_space.hpp"
#include "ortho/vector.hpp"

namespace ortho {

// Unit-vector basis with biorthogonal unit-norm functionals: duals[i] holds
// the coefficients of f_i with f_i(vectors[j]) = delta_ij, ||vectors[i]|| = 1
// and ||f_i||* = 1. det_abs is |det| of the matrix with the vectors as
// columns, the quantity the exchange construction maximizes.
struct AuerbachBasis {
  std::vector<Vector> vectors;
  std::vector<Vector> duals;
  double det_abs = 0.0;
  int sweeps_used = 0;
};

// Maximal-volume coordinate exchange from the standard basis plus a few
// seeded random starts; returns the best basis that reached a stall point
// (where the certificate holds). Dimensions above 8 are rejected.
AuerbachBasis auerbach_basis(const NormedSpace& space, std::uint64_t seed = 2026,
                             int max_sweeps = 50);

struct StarCheck {
  bool pass = false;
  double worst_defect = 0.0;
};

// Certificate check: unit norms, unit dual norms, delta_ij pairing, plus a
// sampled sweep confirming no sphere point pushes a functional above one.
StarCheck verify_property_star(const NormedSpace& space, const AuerbachBasis& basis,
                               std::uint64_t seed = 2026, int count = 200,
                               double tol = 1e-6);

}  // namespace ortho
