#include "ortho/auerbach.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

#include "ortho/errors.hpp"

namespace ortho {

namespace {

constexpr int kRandomStarts = 3;
constexpr double kStrictGain = 1.0 + 1e-12;

Eigen::MatrixXd columns(const std::vector<Vector>& xs) {
  int n = static_cast<int>(xs.size());
  Eigen::MatrixXd b(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) b(i, j) = xs[static_cast<std::size_t>(j)][i];
  return b;
}

double det_of(const std::vector<Vector>& xs) { return columns(xs).determinant(); }

// coefficients of v -> det(basis with column i replaced by v); computed by
// actual column replacement so it stays finite even when the basis is singular
Vector exchange_functional(const std::vector<Vector>& xs, int i) {
  int n = static_cast<int>(xs.size());
  Vector g = Vector::zeros(n);
  std::vector<Vector> tmp = xs;
  for (int k = 0; k < n; ++k) {
    tmp[static_cast<std::size_t>(i)] = Vector::unit(n, k);
    g[k] = det_of(tmp);
  }
  return g;
}

struct LocalResult {
  std::vector<Vector> xs;
  double det_abs = 0.0;
  int sweeps = 0;
  bool converged = false;
};

LocalResult exchange_from(const NormedSpace& s, std::vector<Vector> xs, int max_sweeps) {
  LocalResult r;
  double det = std::fabs(det_of(xs));
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    bool improved = false;
    for (int i = 0; i < s.dim(); ++i) {
      Vector g = exchange_functional(xs, static_cast<int>(i));
      if (g.max_abs() == 0.0) continue;
      std::vector<Vector> trial = xs;
      trial[static_cast<std::size_t>(i)] = s.norming_vector(g);
      double det2 = std::fabs(det_of(trial));
      if (det2 > det * kStrictGain) {
        xs = std::move(trial);
        det = det2;
        improved = true;
      }
    }
    if (!improved) {
      r.converged = true;
      break;
    }
  }
  r.xs = std::move(xs);
  r.det_abs = det;
  r.sweeps = std::min(sweep + 1, max_sweeps);
  return r;
}

}  // namespace

AuerbachBasis auerbach_basis(const NormedSpace& space, std::uint64_t seed, int max_sweeps) {
  int n = space.dim();
  if (n > 8)
    throw unsupported_error("auerbach_basis: exchange search is limited to dimension 8");
  if (max_sweeps < 1) throw std::invalid_argument("auerbach_basis: max_sweeps must be >= 1");

  std::vector<std::vector<Vector>> starts;
  std::vector<Vector> axes;
  axes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) axes.push_back(space.normalized(Vector::unit(n, i)));
  starts.push_back(std::move(axes));
  for (int t = 0; t < kRandomStarts; ++t)
    starts.push_back(space.sample_sphere(seed + static_cast<std::uint64_t>(t), n));

  LocalResult best;
  bool any = false;
  for (auto& xs : starts) {
    LocalResult r = exchange_from(space, std::move(xs), max_sweeps);
    if (!r.converged) continue;
    if (!any || r.det_abs > best.det_abs) {
      best = std::move(r);
      any = true;
    }
  }
  if (!any)
    throw exhaustion_error("auerbach_basis: no exchange run stabilized within " +
                           std::to_string(max_sweeps) + " sweeps");
  if (best.det_abs <= 0.0)
    throw degenerate_error("auerbach_basis: exchange stalled on a singular basis");

  AuerbachBasis out;
  out.vectors = best.xs;
  out.det_abs = best.det_abs;
  out.sweeps_used = best.sweeps;
  Eigen::MatrixXd inv = columns(best.xs).inverse();
  out.duals.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Vector f = Vector::zeros(n);
    for (int k = 0; k < n; ++k) f[k] = inv(i, k);
    out.duals.push_back(std::move(f));
  }
  return out;
}

StarCheck verify_property_star(const NormedSpace& space, const AuerbachBasis& basis,
                               std::uint64_t seed, int count, double tol) {
  int n = space.dim();
  if (static_cast<int>(basis.vectors.size()) != n ||
      static_cast<int>(basis.duals.size()) != n)
    throw std::invalid_argument("verify_property_star: basis size must match the dimension");

  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vector& x = basis.vectors[static_cast<std::size_t>(i)];
    const Vector& f = basis.duals[static_cast<std::size_t>(i)];
    worst = std::max(worst, std::fabs(space.norm(x) - 1.0));
    worst = std::max(worst, std::fabs(space.dual_norm(f) - 1.0));
    for (int j = 0; j < n; ++j) {
      double want = i == j ? 1.0 : 0.0;
      worst = std::max(worst,
                       std::fabs(Vector::dot(f, basis.vectors[static_cast<std::size_t>(j)]) -
                                 want));
    }
  }
  for (const Vector& u : space.sample_sphere(seed, count))
    for (const Vector& f : basis.duals)
      worst = std::max(worst, std::fabs(Vector::dot(f, u)) - 1.0);
  return {worst <= tol, worst};
}

}  // namespace ortho
