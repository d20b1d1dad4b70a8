#include "ortho/operators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ortho/errors.hpp"
#include "pattern_search.hpp"

namespace ortho {

namespace {

constexpr int kNormSamples = 10000;
constexpr int kFloorSamples = 2000;
constexpr double kRankTol = 1e-10;

Eigen::Map<const Eigen::MatrixXd> as_eigen(const LinearOperator& op) {
  return {op.entries().data(), op.rows(), op.cols()};
}

int matrix_rank(const LinearOperator& op) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(as_eigen(op));
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTol * sv(0)) ++r;
  return r;
}

// direction most contracted by the matrix, a good probe for the sphere minimum
Vector least_singular_direction(const LinearOperator& op) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(as_eigen(op), Eigen::ComputeFullV);
  Eigen::VectorXd v = svd.matrixV().col(op.cols() - 1);
  Vector out = Vector::zeros(op.cols());
  for (int i = 0; i < op.cols(); ++i) out[i] = v(i);
  return out;
}

double sampled_extremum(const LinearOperator& op, std::uint64_t seed, bool maximize,
                        int samples) {
  const NormedSpace& dom = op.domain();
  const NormedSpace& cod = op.codomain();
  auto goal = [&](const Vector& v) {
    double nv = dom.norm(v);
    if (nv <= 0.0) return -kInf;
    double r = cod.norm(op.apply(v)) / nv;
    return maximize ? r : -r;
  };
  double best = -kInf;
  Vector arg;
  for (const Vector& u : dom.sample_sphere(seed, samples)) {
    double v = goal(u);
    if (v > best) {
      best = v;
      arg = u;
    }
  }
  if (!maximize) {
    Vector probe = least_singular_direction(op);
    double v = goal(probe);
    if (v > best) {
      best = v;
      arg = probe;
    }
  }
  double polished = best;
  detail::pattern_maximize(goal, arg, &polished);
  return maximize ? polished : -polished;
}

}  // namespace

LinearOperator::LinearOperator(NormedSpace domain, NormedSpace codomain,
                               std::vector<double> column_major)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      rows_(codomain_.dim()),
      cols_(domain_.dim()),
      m_(std::move(column_major)) {
  if (m_.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_))
    throw std::invalid_argument("operator entries must have codomain dim * domain dim values");
  for (double v : m_)
    if (!std::isfinite(v)) throw std::invalid_argument("operator entries must be finite");
}

LinearOperator LinearOperator::identity(const NormedSpace& space) {
  int n = space.dim();
  std::vector<double> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i + i * n)] = 1.0;
  return {space, space, std::move(m)};
}

LinearOperator LinearOperator::diagonal(const NormedSpace& space, const Vector& coeffs) {
  int n = space.dim();
  if (coeffs.dim() != n)
    throw std::invalid_argument("diagonal: coefficient count must match the dimension");
  std::vector<double> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i + i * n)] = coeffs[i];
  return {space, space, std::move(m)};
}

Vector LinearOperator::apply(const Vector& x) const {
  if (x.dim() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  Vector y = Vector::zeros(rows_);
  for (int j = 0; j < cols_; ++j) {
    double xj = x[j];
    if (xj == 0.0) continue;
    for (int i = 0; i < rows_; ++i) y[i] += xj * m_[static_cast<std::size_t>(i + j * rows_)];
  }
  return y;
}

NormEstimate operator_norm(const LinearOperator& op, std::uint64_t seed) {
  const NormedSpace& dom = op.domain();
  const NormedSpace& cod = op.codomain();

  // the norm is a convex maximum, so polytope domains reduce to ball vertices
  if (dom.kind() == SpaceKind::Lp && dom.p() == 1.0) {
    double best = 0.0;
    for (int j = 0; j < op.cols(); ++j) {
      Vector col = Vector::zeros(op.rows());
      for (int i = 0; i < op.rows(); ++i) col[i] = op.entry(i, j);
      best = std::max(best, cod.norm(col));
    }
    return {best, NormEstimate::Method::Exact};
  }
  if (dom.kind() == SpaceKind::Lp && dom.p() == kInf && dom.dim() <= 16) {
    double best = 0.0;
    int n = dom.dim();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Vector x = Vector::zeros(n);
      for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1u ? 1.0 : -1.0;
      best = std::max(best, cod.norm(op.apply(x)));
    }
    return {best, NormEstimate::Method::Exact};
  }
  if (dom.kind() == SpaceKind::Polyhedral && dom.dim() == 2) {
    double best = 0.0;
    for (const Vector& v : dom.ball_vertices()) best = std::max(best, cod.norm(op.apply(v)));
    return {best, NormEstimate::Method::Exact};
  }
  if (dom.euclidean_like() && cod.euclidean_like()) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(as_eigen(op));
    return {svd.singularValues()(0), NormEstimate::Method::Exact};
  }
  return {sampled_extremum(op, seed, true, kNormSamples), NormEstimate::Method::Sampled};
}

NormEstimate lower_bound(const LinearOperator& op, std::uint64_t seed) {
  if (matrix_rank(op) < op.cols()) return {0.0, NormEstimate::Method::Exact};
  if (op.domain().euclidean_like() && op.codomain().euclidean_like()) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(as_eigen(op));
    return {svd.singularValues()(std::min(op.rows(), op.cols()) - 1),
            NormEstimate::Method::Exact};
  }
  return {sampled_extremum(op, seed, false, kNormSamples), NormEstimate::Method::Sampled};
}

OperatorProfile isometry_deviation(const LinearOperator& op, std::uint64_t seed) {
  NormEstimate nrm = operator_norm(op, seed);
  if (nrm.value <= 0.0)
    throw std::invalid_argument("isometry_deviation: the zero operator has no profile");
  NormEstimate lb = lower_bound(op, seed);
  OperatorProfile p;
  p.op_norm = nrm;
  p.lower_bound = lb;
  p.injective = matrix_rank(op) == op.cols();
  p.scale = nrm.value;
  p.delta1 = std::max(0.0, 1.0 - lb.value / nrm.value);
  p.delta2 = 0.0;
  return p;
}

namespace {

PreservationReport measure_pairs(const LinearOperator& op, const OrthoRelation& rel,
                                 Direction dir,
                                 const std::vector<std::pair<Vector, Vector>>& pairs,
                                 std::uint64_t seed) {
  const NormedSpace& cod = op.codomain();
  double scale = operator_norm(op, seed).value;
  if (scale <= 0.0)
    throw std::invalid_argument("preservation: the zero operator has no constant");
  PreservationReport rep{rel, dir, -1.0, {}, 0, 0};
  for (const auto& pr : pairs) {
    Vector tx = op.apply(pr.first);
    Vector ty = op.apply(pr.second);
    if (cod.norm(tx) <= 1e-14 * scale || cod.norm(ty) <= 1e-14 * scale) {
      ++rep.skipped_degenerate;
      continue;
    }
    double e = dir == Direction::Preserve ? dragomir_eps(cod, tx, ty)
                                          : dragomir_eps(cod, ty, tx);
    ++rep.samples_used;
    if (e > rep.eta_hat) {
      rep.eta_hat = e;
      rep.worst_pair = pr;
    }
  }
  if (rep.samples_used == 0)
    throw degenerate_error("preservation: every sampled pair maps into the kernel");
  return rep;
}

}  // namespace

PreservationReport preservation_constant(const LinearOperator& op, const OrthoRelation& rel,
                                         std::uint64_t seed, int count) {
  auto pairs = sample_ortho_pairs(op.domain(), rel, seed, count);
  return measure_pairs(op, rel, Direction::Preserve, pairs, seed);
}

PreservationReport reversal_constant(const LinearOperator& op, const OrthoRelation& rel,
                                     std::uint64_t seed, int count) {
  auto pairs = sample_ortho_pairs(op.domain(), rel, seed, count);
  return measure_pairs(op, rel, Direction::Reverse, pairs, seed);
}

PreservationReport local_preservation_constant(const LinearOperator& op,
                                               const OrthoRelation& rel, const Vector& x,
                                               std::uint64_t seed, int count) {
  std::vector<std::pair<Vector, Vector>> pairs;
  pairs.reserve(static_cast<std::size_t>(count));
  for (Vector& y : sample_partners(op.domain(), rel, x, seed, count))
    pairs.emplace_back(x, std::move(y));
  return measure_pairs(op, rel, Direction::Preserve, pairs, seed);
}

namespace {

double eta_from_ratio(const OrthoRelation& rel, double r) {
  r = std::min(r, 1.0);
  switch (rel.tag) {
    case RelationTag::Birkhoff:
    case RelationTag::Roberts:
      return std::sqrt(1.0 - r * r);
    case RelationTag::Dragomir: {
      double b = rel.eps;
      return std::sqrt(1.0 - r * r * (1.0 - b * b));
    }
    case RelationTag::Chmielinski: {
      double b = rel.eps;
      if (b >= 0.5)
        throw std::invalid_argument("eta bound: the chmielinski parameter must be < 1/2");
      double t = 1.0 - 2.0 * b;
      return std::sqrt(1.0 - r * r * t * t);
    }
    default:
      throw std::invalid_argument("eta bound: no bound for relation " + rel.name());
  }
}

}  // namespace

double isometry_eta_bound(const OrthoRelation& rel, double delta1, double delta2) {
  if (!(delta1 >= 0.0 && delta1 < 1.0))
    throw std::invalid_argument("eta bound: delta1 must be in [0, 1)");
  if (!(delta2 >= 0.0)) throw std::invalid_argument("eta bound: delta2 must be >= 0");
  return eta_from_ratio(rel, (1.0 - delta1) / (1.0 + delta2));
}

double perturbed_eta_bound(const OrthoRelation& rel, double delta1, double delta2,
                           double eps) {
  if (!(delta1 >= 0.0 && delta1 < 1.0))
    throw std::invalid_argument("eta bound: delta1 must be in [0, 1)");
  if (!(delta2 >= 0.0)) throw std::invalid_argument("eta bound: delta2 must be >= 0");
  if (!(eps >= 0.0)) throw std::invalid_argument("eta bound: eps must be >= 0");
  double numerator = 1.0 - delta1 - eps * (1.0 + delta2);
  if (numerator <= 0.0)
    throw degenerate_bound_error("eta bound: perturbation swallows the lower bound");
  return eta_from_ratio(rel, numerator / ((1.0 + delta2) * (1.0 + eps)));
}

double bounded_below_floor(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("floor: eta must be in [0, 1]");
  double s = std::sqrt(1.0 - eta * eta);
  return s / (12.0 + 3.0 * s);
}

FloorCheck verify_floor(const LinearOperator& op, double eta, std::uint64_t seed) {
  double fl = bounded_below_floor(eta);
  double nrm = operator_norm(op, seed).value;
  if (nrm <= 0.0) throw std::invalid_argument("verify_floor: zero operator");
  double worst;
  if (matrix_rank(op) < op.cols()) {
    worst = 0.0;
  } else {
    worst = sampled_extremum(op, seed, false, kFloorSamples) / nrm;
  }
  return {worst + 1e-9 >= fl, worst, fl};
}

}  // namespace ortho
