#include "ortho/normed_space.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ortho/errors.hpp"
#include "ortho/rng.hpp"
#include "num_format.hpp"
#include "pattern_search.hpp"

namespace ortho {

namespace {

// relative tolerance for active-set membership and vertex dedup (l_inf)
constexpr double kActiveTol = 1e-9;
// relative threshold below which an l_1 coordinate counts as zero
constexpr double kZeroCoordTol = 1e-10;
// support sets on l_1 enumerate 2^z vertices; refuse beyond this
constexpr int kMaxSupportZeros = 20;
// sampled polyhedral dual norms (dim >= 3)
constexpr int kPolyDualSamples = 8192;
constexpr std::uint64_t kInternalSeed = 0x0217a2f5u;

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

using detail::format_number;

}  // namespace

NormedSpace::NormedSpace(SpaceKind kind, int dim, double p,
                         std::vector<Vector> functionals)
    : kind_(kind), dim_(dim), p_(p), functionals_(std::move(functionals)) {}

NormedSpace NormedSpace::lp(double p, int dim) {
  if (dim < 1) throw std::invalid_argument("lp: dimension must be >= 1");
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("lp: p must be in [1, inf]");
  if (p > 64.0) p = kInf;  // indistinguishable from l_inf at double precision
  return NormedSpace(SpaceKind::Lp, dim, p, {});
}

NormedSpace NormedSpace::euclidean(int dim) {
  if (dim < 1) throw std::invalid_argument("euclidean: dimension must be >= 1");
  return NormedSpace(SpaceKind::Euclidean, dim, 2.0, {});
}

NormedSpace NormedSpace::polyhedral(int dim, std::vector<Vector> functionals) {
  if (dim < 1) throw std::invalid_argument("polyhedral: dimension must be >= 1");
  if (static_cast<int>(functionals.size()) < dim)
    throw std::invalid_argument("polyhedral: need at least dim functionals");
  for (const Vector& a : functionals)
    if (a.dim() != dim)
      throw std::invalid_argument("polyhedral: functional dimension mismatch");
  Eigen::MatrixXd m(functionals.size(), dim);
  for (std::size_t i = 0; i < functionals.size(); ++i)
    for (int j = 0; j < dim; ++j) m(static_cast<Eigen::Index>(i), j) = functionals[i][j];
  if (Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(m).rank() < dim)
    throw std::invalid_argument("polyhedral: functionals must span the dual (got a seminorm)");
  NormedSpace s(SpaceKind::Polyhedral, dim, 0.0, std::move(functionals));
  if (dim == 2)
    s.enumerate_ball_vertices_2d();
  else
    s.enumerate_ball_vertices_nd();
  return s;
}

double NormedSpace::norm(const Vector& x) const {
  if (x.dim() != dim_) throw std::invalid_argument("norm: dimension mismatch");
  switch (kind_) {
    case SpaceKind::Euclidean:
      return x.norm2();
    case SpaceKind::Lp: {
      if (p_ == kInf) return x.max_abs();
      if (p_ == 1.0) {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) s += std::fabs(x[i]);
        return s;
      }
      if (p_ == 2.0) return x.norm2();
      double m = x.max_abs();
      if (m == 0.0) return 0.0;
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) s += std::pow(std::fabs(x[i]) / m, p_);
      return m * std::pow(s, 1.0 / p_);
    }
    case SpaceKind::Polyhedral: {
      double m = 0.0;
      for (const Vector& a : functionals_) m = std::max(m, std::fabs(Vector::dot(a, x)));
      return m;
    }
  }
  throw std::logic_error("norm: unreachable");
}

Vector NormedSpace::normalized(const Vector& x) const {
  double n = norm(x);
  if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
  return x * (1.0 / n);
}

double NormedSpace::dual_norm(const Vector& f) const {
  if (f.dim() != dim_) throw std::invalid_argument("dual_norm: dimension mismatch");
  switch (kind_) {
    case SpaceKind::Euclidean:
      return f.norm2();
    case SpaceKind::Lp: {
      if (p_ == 1.0) return f.max_abs();
      if (p_ == kInf) {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) s += std::fabs(f[i]);
        return s;
      }
      double q = p_ / (p_ - 1.0);
      double m = f.max_abs();
      if (m == 0.0) return 0.0;
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) s += std::pow(std::fabs(f[i]) / m, q);
      return m * std::pow(s, 1.0 / q);
    }
    case SpaceKind::Polyhedral: {
      if (!ball_vertices_.empty()) {
        // the vertex list carries both signs of every vertex, so the plain
        // maximum of the pairing is the dual norm
        double best = 0.0;
        for (const Vector& v : ball_vertices_) best = std::max(best, Vector::dot(f, v));
        return best;
      }
      return polyhedral_dual_sampled(f, nullptr);
    }
  }
  throw std::logic_error("dual_norm: unreachable");
}

SupportSet NormedSpace::support_set(const Vector& x) const {
  double nx = norm(x);
  if (nx == 0.0) throw std::invalid_argument("support_set: x must be nonzero");
  SupportSet out;
  out.point = x;
  auto push = [&](Vector coeffs) {
    out.vertices.push_back(SupportFunctional{std::move(coeffs), this});
  };

  if (euclidean_like()) {
    push(x * (1.0 / nx));
    return out;
  }

  if (kind_ == SpaceKind::Lp && p_ == 1.0) {
    std::vector<int> zeros;
    Vector base = Vector::zeros(dim_);
    for (int i = 0; i < dim_; ++i) {
      if (std::fabs(x[i]) <= kZeroCoordTol * nx)
        zeros.push_back(i);
      else
        base[i] = sgn(x[i]);
    }
    if (static_cast<int>(zeros.size()) > kMaxSupportZeros)
      throw capacity_error("support_set: more than 2^20 vertices on l_1");
    // all sign assignments on the zero coordinates; +1 slots first so the
    // leading vertex is the all-plus one
    for (std::uint64_t mask = 0; mask < (1ull << zeros.size()); ++mask) {
      Vector v = base;
      for (std::size_t j = 0; j < zeros.size(); ++j)
        v[zeros[j]] = (mask >> j) & 1 ? -1.0 : 1.0;
      push(v);
    }
    return out;
  }

  if (kind_ == SpaceKind::Lp && p_ == kInf) {
    for (int i = 0; i < dim_; ++i)
      if (std::fabs(x[i]) >= nx * (1.0 - kActiveTol)) {
        Vector v = Vector::zeros(dim_);
        v[i] = sgn(x[i]);
        push(v);
      }
    return out;
  }

  if (kind_ == SpaceKind::Lp) {
    Vector v = Vector::zeros(dim_);
    for (int i = 0; i < dim_; ++i)
      v[i] = sgn(x[i]) * std::pow(std::fabs(x[i]) / nx, p_ - 1.0);
    push(v);
    return out;
  }

  // polyhedral: active functionals, signed, with near-duplicates merged
  for (const Vector& a : functionals_) {
    double val = Vector::dot(a, x);
    if (std::fabs(val) < nx * (1.0 - kActiveTol)) continue;
    Vector cand = a * sgn(val);
    bool dup = false;
    for (const SupportFunctional& f : out.vertices)
      if (f.coeffs.linf_dist(cand) <= 1e-9) {
        dup = true;
        break;
      }
    if (!dup) push(std::move(cand));
  }
  return out;
}

bool NormedSpace::is_smooth_point(const Vector& x) const {
  return support_set(x).vertices.size() == 1;
}

std::vector<Vector> NormedSpace::sample_sphere(std::uint64_t seed, int count) const {
  if (count < 0) throw std::invalid_argument("sample_sphere: count must be >= 0");
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    for (;;) {
      Vector v = Vector::zeros(dim_);
      for (int j = 0; j < dim_; ++j) v[j] = rng.normal();
      double n = norm(v);
      if (n > 1e-12) {
        out.push_back(v * (1.0 / n));
        break;
      }
    }
  }
  return out;
}

Vector NormedSpace::norming_vector(const Vector& f) const {
  if (f.dim() != dim_) throw std::invalid_argument("norming_vector: dimension mismatch");
  if (f.max_abs() == 0.0) throw std::invalid_argument("norming_vector: f must be nonzero");
  switch (kind_) {
    case SpaceKind::Euclidean:
      return f * (1.0 / f.norm2());
    case SpaceKind::Lp: {
      if (p_ == 1.0) {
        // dual is l_inf; the max coordinate attains, lowest index on ties
        int arg = 0;
        for (int i = 1; i < dim_; ++i)
          if (std::fabs(f[i]) > std::fabs(f[arg])) arg = i;
        Vector v = Vector::zeros(dim_);
        v[arg] = sgn(f[arg]);
        return v;
      }
      if (p_ == kInf) {
        Vector v = Vector::zeros(dim_);
        for (int i = 0; i < dim_; ++i) v[i] = sgn(f[i]);
        return v;
      }
      if (p_ == 2.0) return f * (1.0 / f.norm2());
      double q = p_ / (p_ - 1.0);
      double dn = dual_norm(f);
      Vector v = Vector::zeros(dim_);
      for (int i = 0; i < dim_; ++i)
        v[i] = sgn(f[i]) * std::pow(std::fabs(f[i]) / dn, q - 1.0);
      return v;
    }
    case SpaceKind::Polyhedral: {
      if (!ball_vertices_.empty()) {
        const Vector* arg = nullptr;
        double best = -kInf;
        for (const Vector& v : ball_vertices_) {
          double val = Vector::dot(f, v);
          if (val > best) {
            best = val;
            arg = &v;
          }
        }
        return *arg;
      }
      Vector arg = Vector::zeros(dim_);
      polyhedral_dual_sampled(f, &arg);
      return arg;
    }
  }
  throw std::logic_error("norming_vector: unreachable");
}

const std::vector<Vector>& NormedSpace::ball_vertices() const {
  if (kind_ != SpaceKind::Polyhedral)
    throw unsupported_error("ball_vertices: only for polyhedral spaces");
  if (ball_vertices_.empty())
    throw capacity_error("ball_vertices: enumeration was over budget for this system");
  return ball_vertices_;
}

void NormedSpace::enumerate_ball_vertices_2d() {
  std::vector<Vector> cons;
  for (const Vector& a : functionals_) {
    if (a.max_abs() == 0.0) continue;
    cons.push_back(a);
    cons.push_back(-a);
  }
  std::vector<Vector> verts;
  for (std::size_t i = 0; i < cons.size(); ++i)
    for (std::size_t j = i + 1; j < cons.size(); ++j) {
      const Vector& ci = cons[i];
      const Vector& cj = cons[j];
      double det = ci[0] * cj[1] - ci[1] * cj[0];
      if (std::fabs(det) <= 1e-12 * std::max(1.0, ci.max_abs() * cj.max_abs())) continue;
      Vector v{(cj[1] - ci[1]) / det, (ci[0] - cj[0]) / det};
      bool feasible = true;
      for (const Vector& c : cons)
        if (Vector::dot(c, v) > 1.0 + 1e-9) {
          feasible = false;
          break;
        }
      if (!feasible) continue;
      bool dup = false;
      for (const Vector& w : verts)
        if (w.linf_dist(v) <= 1e-9) {
          dup = true;
          break;
        }
      if (!dup) verts.push_back(v);
    }
  std::sort(verts.begin(), verts.end(), [](const Vector& a, const Vector& b) {
    return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
  });
  ball_vertices_ = std::move(verts);
}

void NormedSpace::enumerate_ball_vertices_nd() {
  const int n = dim_;
  const int m = static_cast<int>(functionals_.size());
  // every vertex solves <a_i, x> = s_i on some invertible n-subset, so
  // C(m,n) * 2^n candidate solves cover them all; an oversized system keeps
  // the cache empty and the sampled path takes over
  double combos = 1.0;
  for (int k = 0; k < n; ++k) combos = combos * (m - k) / (k + 1);
  if (combos * std::pow(2.0, n) > 250000.0) return;

  std::vector<Vector> verts;
  Eigen::MatrixXd A(n, n);
  Eigen::VectorXd b(n);
  std::vector<int> comb(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) comb[static_cast<std::size_t>(i)] = i;
  for (;;) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) A(r, c) = functionals_[static_cast<std::size_t>(comb[static_cast<std::size_t>(r)])][c];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (lu.isInvertible()) {
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        for (int r = 0; r < n; ++r) b(r) = (mask >> r) & 1u ? -1.0 : 1.0;
        Eigen::VectorXd xe = lu.solve(b);
        Vector v = Vector::zeros(n);
        for (int r = 0; r < n; ++r) v[r] = xe(r);
        bool feasible = true;
        for (const Vector& a : functionals_)
          if (std::fabs(Vector::dot(a, v)) > 1.0 + kActiveTol) {
            feasible = false;
            break;
          }
        if (!feasible) continue;
        bool dup = false;
        for (const Vector& w : verts)
          if (w.linf_dist(v) <= 1e-9) {
            dup = true;
            break;
          }
        if (!dup) verts.push_back(std::move(v));
      }
    }
    int k = n - 1;
    while (k >= 0 && comb[static_cast<std::size_t>(k)] == m - n + k) --k;
    if (k < 0) break;
    ++comb[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < n; ++j)
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
  std::sort(verts.begin(), verts.end(), [n](const Vector& a, const Vector& c) {
    for (int i = 0; i < n; ++i) {
      if (a[i] != c[i]) return a[i] < c[i];
    }
    return false;
  });
  ball_vertices_ = std::move(verts);
}

double NormedSpace::polyhedral_dual_sampled(const Vector& f, Vector* arg) const {
  auto goal = [&](const Vector& v) {
    double n = norm(v);
    return n > 0.0 ? std::fabs(Vector::dot(f, v)) / n : 0.0;
  };
  Rng rng(kInternalSeed);
  Vector best_arg = Vector::unit(dim_, 0);
  double best = goal(best_arg);
  for (int s = 0; s < kPolyDualSamples; ++s) {
    Vector v = Vector::zeros(dim_);
    for (int j = 0; j < dim_; ++j) v[j] = rng.normal();
    if (v.max_abs() == 0.0) continue;
    double val = goal(v);
    if (val > best) {
      best = val;
      best_arg = v;
    }
  }
  Vector refined = detail::pattern_maximize(goal, best_arg, &best);
  if (arg) {
    if (Vector::dot(f, refined) < 0.0) refined = -refined;
    *arg = normalized(refined);
  }
  return best;
}

std::string NormedSpace::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case SpaceKind::Lp:
      os << "lp:" << format_number(p_) << ":" << dim_;
      break;
    case SpaceKind::Euclidean:
      os << "euclidean:" << dim_;
      break;
    case SpaceKind::Polyhedral: {
      os << "poly:" << dim_ << ":[";
      for (std::size_t i = 0; i < functionals_.size(); ++i) {
        if (i) os << ";";
        for (int j = 0; j < dim_; ++j) {
          if (j) os << ",";
          os << format_number(functionals_[i][j]);
        }
      }
      os << "]";
      break;
    }
  }
  return os.str();
}

}  // namespace ortho
