#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ortho/normed_space.hpp"
#include "ortho/vector.hpp"

namespace ortho {

// default decision tolerance for all relation predicates
inline constexpr double kRelationTol = 1e-8;

enum class RelationTag { Birkhoff, Isosceles, UnitIsosceles, Roberts, Dragomir, Chmielinski };

// An orthogonality relation; Dragomir and Chmielinski carry a parameter
// eps in [0, 1).
struct OrthoRelation {
  RelationTag tag;
  double eps = 0.0;

  static OrthoRelation birkhoff() { return {RelationTag::Birkhoff}; }
  static OrthoRelation isosceles() { return {RelationTag::Isosceles}; }
  static OrthoRelation unit_isosceles() { return {RelationTag::UnitIsosceles}; }
  static OrthoRelation roberts() { return {RelationTag::Roberts}; }
  static OrthoRelation dragomir(double eps);
  static OrthoRelation chmielinski(double eps);

  std::string name() const;
};

struct GapResult {
  double alpha;             // inf over lambda of ||x + lambda y||
  double minimizer_lambda;  // a lambda attaining it (within search tolerance)
  int evaluations;          // norm evaluations spent
};

// inf_lambda ||x + lambda y||. Convex in lambda; any minimizer satisfies
// |lambda| <= 2||x|| / ||y||, and golden-section search on that bracket
// reaches absolute tolerance 1e-10 (closed form on euclidean-like spaces).
GapResult min_gap(const NormedSpace& s, const Vector& x, const Vector& y);

// Smallest eps for which x is eps-approximately orthogonal to y in the
// sqrt(1-eps^2) sense: sqrt(1 - (alpha/||x||)^2). Returns the sentinel 1
// when alpha/||x|| <= 1e-8 (linearly dependent pair; no valid eps exists).
// Ratios within 1e-15 of 1 are below the formula's double-precision
// resolution and report exactly 0.
double dragomir_eps(const NormedSpace& s, const Vector& x, const Vector& y);

// Decide whether the relation holds, definitionally, within tol:
//   Birkhoff          alpha >= ||x|| - tol
//   Dragomir(eps)     alpha >= sqrt(1-eps^2)||x|| - tol
//   Chmielinski(eps)  inf_l [||x+ly||^2 - ||x||^2 + 2 eps ||x|| ||ly||] >= -tol
//   Isosceles         | ||x+y|| - ||x-y|| | <= tol
//   UnitIsosceles     same, requiring ||x|| = ||y|| = 1 within 1e-9
//   Roberts           max over the lambda grid of | ||x+ly|| - ||x-ly|| | <= tol
//                     (euclidean-like shortcut: |<x,y>| <= 1e-10 ||x||_2 ||y||_2)
bool holds(const NormedSpace& s, const OrthoRelation& rel, const Vector& x,
           const Vector& y, double tol = kRelationTol);

// Support-set route. Birkhoff: some f in J(x) has f(y) = 0, i.e. the value
// interval over the vertices brackets zero. Chmielinski(eps): the interval
// comes within eps||y|| of zero. Other relations are an argument error.
bool dual_check(const NormedSpace& s, const OrthoRelation& rel, const Vector& x,
                const Vector& y, double tol = kRelationTol);

// Convert a Chmielinski parameter to the Dragomir parameter it implies:
// gamma = 2 sqrt(beta - beta^2), for beta in [0, 1/2).
double beps_to_deps(double beta);

// max over a log-spaced lambda grid (129 magnitudes, 1e-4..1e4, both signs
// by evenness) of | ||x+ly|| - ||x-ly|| |; zero exactly when x R-orthogonal y
double roberts_defect(const NormedSpace& s, const Vector& x, const Vector& y);

// For unit x: y = z - f(z) x with f the leading support vertex of x, so
// f(y) = 0 and x is Birkhoff-orthogonal to y. Degenerate (z parallel to x)
// raises degenerate_error.
Vector orthogonal_partner(const NormedSpace& s, const Vector& x, const Vector& z);

// ((x+y)/2, (x-y)/2); the parts are isosceles-orthogonal whenever
// ||x|| = ||y||. Linearly dependent inputs are an argument error.
std::pair<Vector, Vector> isosceles_pair(const Vector& x, const Vector& y);

// Scan `grid` directions of the unit circle for a Roberts partner of unit x,
// refining defect minima locally. 2-D only. Empty optional when no candidate
// defect falls below 1e-6.
std::optional<Vector> roberts_witness_search(const NormedSpace& s, const Vector& x,
                                             int grid);

// count pairs satisfying the relation, one derived rng stream per index.
// Birkhoff via orthogonal_partner; Isosceles via isosceles_pair of random
// unit vectors (parts are not unit); UnitIsosceles via sign-change bisection
// on the sphere; Dragomir/Chmielinski by rejection against holds(); Roberts
// (dim 2 only) via witness search. More than 10^6 rejected attempts raise
// exhaustion_error.
std::vector<std::pair<Vector, Vector>> sample_ortho_pairs(const NormedSpace& s,
                                                          const OrthoRelation& rel,
                                                          std::uint64_t seed, int count);

// Partners of a fixed unit x under the relation, same strategies as
// sample_ortho_pairs. Roberts with no witness for this x exhausts
// immediately (the search is deterministic, retries cannot help).
std::vector<Vector> sample_partners(const NormedSpace& s, const OrthoRelation& rel,
                                    const Vector& x, std::uint64_t seed, int count);

}  // namespace ortho
