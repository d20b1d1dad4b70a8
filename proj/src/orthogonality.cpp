#include "ortho/orthogonality.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "golden.hpp"
#include "num_format.hpp"
#include "ortho/errors.hpp"
#include "ortho/rng.hpp"

namespace ortho {

namespace {

constexpr long kMaxAttempts = 1000000;
// grid used when sample_ortho_pairs has to search for Roberts partners
constexpr int kSamplerGrid = 512;

Vector draw_unit(const NormedSpace& s, Rng& rng) {
  for (;;) {
    Vector v = Vector::zeros(s.dim());
    for (int i = 0; i < s.dim(); ++i) v[i] = rng.normal();
    double n = s.norm(v);
    if (n > 1e-12) return v * (1.0 / n);
  }
}

// euclidean sine of the angle between x and y; zero iff dependent
double euclid_sine(const Vector& x, const Vector& y) {
  double nx = x.norm2(), ny = y.norm2();
  if (nx == 0.0 || ny == 0.0) return 0.0;
  double c = Vector::dot(x, y) / (nx * ny);
  Vector r = Vector::axpy(y * (1.0 / ny), -c, x * (1.0 / nx));
  return r.norm2();
}

void check_unit(const NormedSpace& s, const Vector& v, const char* who) {
  if (std::fabs(s.norm(v) - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(who) + ": vector must be unit norm");
}

// Rebuild y so the leading support functional vanishes on it exactly, not
// just to the last ulp. Only possible when the coefficients are 0/+-1 (l1
// signs, linf vertices, small-integer polytopes), which are exactly the
// kinked geometries where a one-ulp residual gets amplified by the distance
// to the nearest kink and shows up as a spurious 1e-7 scale constant.
// Coordinates are re-quantized to the 2^-30 grid so consecutive differences
// telescope without rounding; the vector moves by at most a few 1e-10.
bool exact_zero_snap(const SupportFunctional& f, Vector& y) {
  std::vector<int> act;
  for (int k = 0; k < y.dim(); ++k) {
    double c = f.coeffs[k];
    if (c == 0.0) continue;
    if (c != 1.0 && c != -1.0) return false;
    act.push_back(k);
  }
  if (act.empty()) return false;
  if (act.size() == 1) {
    y[act[0]] = 0.0;
    return true;
  }
  constexpr double kGrid = 1073741824.0;  // 2^30
  double cum = 0.0, prev = 0.0;
  for (std::size_t m = 0; m < act.size(); ++m) {
    double next = 0.0;
    if (m + 1 < act.size()) {
      cum += f.coeffs[act[m]] * y[act[m]];
      next = std::nearbyint(cum * kGrid) / kGrid;
    }
    y[act[m]] = f.coeffs[act[m]] * (next - prev);
    prev = next;
  }
  return true;
}

[[noreturn]] void exhausted(const char* what) {
  throw exhaustion_error(std::string("sampling exhausted after 1e6 attempts: ") + what);
}

// Unit v with ||x+v|| = ||x-v||, found by bisecting the sign change of
// g(v) = ||x+v|| - ||x-v|| along a sphere path from w to -w (g is odd).
Vector unit_isosceles_partner(const NormedSpace& s, const Vector& x, Rng& rng,
                              long& attempts) {
  auto g = [&](const Vector& v) { return s.norm(x + v) - s.norm(x - v); };
  for (;;) {
    if (++attempts > kMaxAttempts) exhausted("unit isosceles partner");
    Vector w = Vector::zeros(s.dim());
    for (int i = 0; i < s.dim(); ++i) w[i] = rng.normal();
    double nw = w.norm2();
    if (nw < 1e-12) continue;
    w = w * (1.0 / nw);
    Vector z = Vector::zeros(s.dim());
    for (int i = 0; i < s.dim(); ++i) z[i] = rng.normal();
    z = Vector::axpy(z, -Vector::dot(z, w), w);
    double nz = z.norm2();
    if (nz < 1e-12) continue;
    z = z * (1.0 / nz);
    // p(t) sweeps half a great circle; p(1) = -p(0), so g flips sign
    auto p = [&](double t) {
      double a = std::cos(std::numbers::pi * t), b = std::sin(std::numbers::pi * t);
      return s.normalized(Vector::axpy(w * a, b, z));
    };
    double lo = 0.0, hi = 1.0;
    Vector vlo = p(lo);
    double glo = g(vlo);
    if (std::fabs(glo) <= 1e-12) return vlo;
    for (int it = 0; it < 100; ++it) {
      double mid = 0.5 * (lo + hi);
      Vector vm = p(mid);
      double gm = g(vm);
      if (std::fabs(gm) <= 1e-12) return vm;
      if ((gm > 0.0) == (glo > 0.0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
    Vector v = p(0.5 * (lo + hi));
    if (std::fabs(g(v)) <= kRelationTol) return v;
  }
}

// all refined Roberts partners of unit x found on an angle grid, scan order
std::vector<Vector> roberts_candidates(const NormedSpace& s, const Vector& x,
                                       int grid) {
  auto dir = [&](double th) { return s.normalized(Vector{std::cos(th), std::sin(th)}); };
  auto defect = [&](double th) { return roberts_defect(s, x, dir(th)); };
  std::vector<double> d(static_cast<std::size_t>(grid));
  const double step = 2.0 * std::numbers::pi / grid;
  for (int k = 0; k < grid; ++k) d[static_cast<std::size_t>(k)] = defect(k * step);
  std::vector<Vector> found;
  for (int k = 0; k < grid; ++k) {
    double prev = d[static_cast<std::size_t>((k + grid - 1) % grid)];
    double next = d[static_cast<std::size_t>((k + 1) % grid)];
    double here = d[static_cast<std::size_t>(k)];
    if (here > prev || here > next) continue;
    if (here == prev && here == next) continue;  // plateau interior; its edges qualify
    // shallow probe first: the defect moves at most ~1e5 per unit angle (the
    // 1e4 lambda cap times the direction derivative), so a basin that still
    // sits above 1 after narrowing to 1e-5, grid point included, cannot
    // reach zero
    auto probe = detail::golden_min(defect, (k - 1) * step, (k + 1) * step, 1e-5);
    if (std::min(here, probe.value) > 1.0) continue;
    auto r = detail::golden_min(defect, (k - 1) * step, (k + 1) * step, 1e-14);
    // the grid point itself may beat the refined probe (axes on power-of-two
    // grids are exact), and the defect scan amplifies angular error linearly
    Vector y = dir(here <= r.value ? k * step : r.x);
    if (!holds(s, OrthoRelation::roberts(), x, y)) continue;
    bool dup = false;
    for (const Vector& w : found)
      if (w.linf_dist(y) <= 1e-6) {
        dup = true;
        break;
      }
    if (!dup) found.push_back(std::move(y));
  }
  return found;
}

}  // namespace

OrthoRelation OrthoRelation::dragomir(double eps) {
  if (!(eps >= 0.0 && eps < 1.0))
    throw std::invalid_argument("dragomir: eps must be in [0, 1)");
  return {RelationTag::Dragomir, eps};
}

OrthoRelation OrthoRelation::chmielinski(double eps) {
  if (!(eps >= 0.0 && eps < 1.0))
    throw std::invalid_argument("chmielinski: eps must be in [0, 1)");
  return {RelationTag::Chmielinski, eps};
}

std::string OrthoRelation::name() const {
  switch (tag) {
    case RelationTag::Birkhoff: return "birkhoff";
    case RelationTag::Isosceles: return "isosceles";
    case RelationTag::UnitIsosceles: return "unit-isosceles";
    case RelationTag::Roberts: return "roberts";
    case RelationTag::Dragomir: return "dragomir:" + detail::format_number(eps);
    case RelationTag::Chmielinski: return "chmielinski:" + detail::format_number(eps);
  }
  return "?";
}

GapResult min_gap(const NormedSpace& s, const Vector& x, const Vector& y) {
  double nx = s.norm(x);
  double ny = s.norm(y);
  if (nx == 0.0) throw std::invalid_argument("min_gap: x must be nonzero");
  if (ny == 0.0) throw std::invalid_argument("min_gap: y must be nonzero");
  if (s.euclidean_like()) {
    double yy = Vector::dot(y, y);
    double xy = Vector::dot(x, y);
    double a2 = Vector::dot(x, x) - xy * xy / yy;
    return {std::sqrt(std::max(a2, 0.0)), -xy / yy, 2};
  }
  // any minimizer satisfies ||lam| ||y|| - ||x||| <= ||x||
  double bracket = 2.0 * nx / ny;
  Vector buf = x;
  auto g = [&](double lam) {
    for (int i = 0; i < x.dim(); ++i) buf[i] = x[i] + lam * y[i];
    return s.norm(buf);
  };
  auto r = detail::golden_min(g, -bracket, bracket, 1e-11 * (1.0 + bracket));
  return {r.value, r.x, r.evaluations + 2};
}

double dragomir_eps(const NormedSpace& s, const Vector& x, const Vector& y) {
  double r = min_gap(s, x, y).alpha / s.norm(x);
  if (r <= 1e-8) return 1.0;  // dependent pair; no eps < 1 works
  // sqrt(1 - r^2) amplifies one ulp of rounding in r to ~2e-8, so gaps
  // within 1e-15 of the norm are below the formula's resolution and
  // quantize to exactly 0
  if (r >= 1.0 - 1e-15) return 0.0;
  return std::sqrt(1.0 - r * r);
}

bool holds(const NormedSpace& s, const OrthoRelation& rel, const Vector& x,
           const Vector& y, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("holds: tol must be positive");
  switch (rel.tag) {
    case RelationTag::Birkhoff:
    case RelationTag::Dragomir: {
      double nx = s.norm(x);
      if (nx == 0.0) throw std::invalid_argument("holds: x must be nonzero");
      if (s.norm(y) == 0.0) return true;
      double thresh = rel.tag == RelationTag::Birkhoff
                          ? nx
                          : std::sqrt(1.0 - rel.eps * rel.eps) * nx;
      return min_gap(s, x, y).alpha >= thresh - tol;
    }
    case RelationTag::Chmielinski: {
      double nx = s.norm(x);
      if (nx == 0.0) throw std::invalid_argument("holds: x must be nonzero");
      double ny = s.norm(y);
      if (ny == 0.0) return true;
      double bracket = 2.0 * nx / ny;
      Vector buf = x;
      auto h = [&](double lam) {
        for (int i = 0; i < x.dim(); ++i) buf[i] = x[i] + lam * y[i];
        double g = s.norm(buf);
        return g * g - nx * nx + 2.0 * rel.eps * nx * ny * std::fabs(lam);
      };
      // piecewise convex; minimize each sign branch separately
      double m = std::min(detail::golden_min(h, 0.0, bracket, 1e-12 * (1.0 + bracket)).value,
                          detail::golden_min(h, -bracket, 0.0, 1e-12 * (1.0 + bracket)).value);
      return m >= -tol * std::max(1.0, nx * nx);
    }
    case RelationTag::Isosceles:
      return std::fabs(s.norm(x + y) - s.norm(x - y)) <= tol;
    case RelationTag::UnitIsosceles:
      check_unit(s, x, "holds(unit-isosceles)");
      check_unit(s, y, "holds(unit-isosceles)");
      return std::fabs(s.norm(x + y) - s.norm(x - y)) <= tol;
    case RelationTag::Roberts: {
      if (s.norm(y) == 0.0 || s.norm(x) == 0.0) return true;
      if (s.euclidean_like())
        return std::fabs(Vector::dot(x, y)) <= 1e-10 * x.norm2() * y.norm2();
      return roberts_defect(s, x, y) <= tol;
    }
  }
  throw std::logic_error("holds: unreachable");
}

bool dual_check(const NormedSpace& s, const OrthoRelation& rel, const Vector& x,
                const Vector& y, double tol) {
  if (rel.tag != RelationTag::Birkhoff && rel.tag != RelationTag::Chmielinski)
    throw std::invalid_argument("dual_check: only birkhoff and chmielinski have a support-set route");
  SupportSet js = s.support_set(x);
  double lo = kInf, hi = -kInf;
  for (const SupportFunctional& f : js.vertices) {
    double v = f(y);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (rel.tag == RelationTag::Birkhoff) return lo <= tol && hi >= -tol;
  double minmag = (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::fabs(lo), std::fabs(hi));
  return minmag <= rel.eps * s.norm(y) + tol;
}

double beps_to_deps(double beta) {
  if (!(beta >= 0.0 && beta < 0.5))
    throw std::invalid_argument("beps_to_deps: beta must be in [0, 1/2)");
  return 2.0 * std::sqrt(beta * (1.0 - beta));
}

double roberts_defect(const NormedSpace& s, const Vector& x, const Vector& y) {
  // | ||x+ly|| - ||x-ly|| | is even in l, so the positive magnitudes cover
  // both signs of the grid
  static const std::array<double, 129> lams = [] {
    std::array<double, 129> t{};
    for (int k = 0; k <= 128; ++k)
      t[static_cast<std::size_t>(k)] = std::pow(10.0, -4.0 + 8.0 * k / 128.0);
    return t;
  }();
  const int n = x.dim();
  Vector plus = x, minus = x;
  double worst = 0.0;
  for (double lam : lams) {
    for (int i = 0; i < n; ++i) {
      plus[i] = x[i] + lam * y[i];
      minus[i] = x[i] - lam * y[i];
    }
    worst = std::max(worst, std::fabs(s.norm(plus) - s.norm(minus)));
  }
  return worst;
}

Vector orthogonal_partner(const NormedSpace& s, const Vector& x, const Vector& z) {
  check_unit(s, x, "orthogonal_partner");
  double nz = s.norm(z);
  SupportSet js = s.support_set(x);
  const SupportFunctional& f = js.vertices.front();
  Vector y = Vector::axpy(z, -f(z), x);
  if (s.norm(y) <= 1e-10 * std::max(1.0, nz))
    throw degenerate_error("orthogonal_partner: z is parallel to x");
  return y;
}

std::pair<Vector, Vector> isosceles_pair(const Vector& x, const Vector& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("isosceles_pair: dimension mismatch");
  if (x.norm2() == 0.0 || y.norm2() == 0.0 || euclid_sine(x, y) <= 1e-12)
    throw std::invalid_argument("isosceles_pair: x and y must be linearly independent");
  return {(x + y) * 0.5, (x - y) * 0.5};
}

std::optional<Vector> roberts_witness_search(const NormedSpace& s, const Vector& x,
                                             int grid) {
  if (s.dim() != 2)
    throw unsupported_error("roberts_witness_search: only 2-D spaces are searchable");
  if (grid < 8) throw std::invalid_argument("roberts_witness_search: grid too small");
  check_unit(s, x, "roberts_witness_search");
  auto found = roberts_candidates(s, x, grid);
  if (found.empty()) return std::nullopt;
  return found.front();
}

std::vector<std::pair<Vector, Vector>> sample_ortho_pairs(const NormedSpace& s,
                                                          const OrthoRelation& rel,
                                                          std::uint64_t seed, int count) {
  if (count < 0) throw std::invalid_argument("sample_ortho_pairs: count must be >= 0");
  if (rel.tag == RelationTag::Roberts && s.dim() != 2)
    throw std::invalid_argument("sample_ortho_pairs: roberts sampling needs dim 2");
  // at eps 0 both approximate relations coincide with the exact one, so use
  // the constructive sampler instead of rejection against a thin set
  if ((rel.tag == RelationTag::Dragomir || rel.tag == RelationTag::Chmielinski) &&
      rel.eps == 0.0)
    return sample_ortho_pairs(s, OrthoRelation::birkhoff(), seed, count);
  std::vector<std::pair<Vector, Vector>> out;
  out.reserve(static_cast<std::size_t>(count));
  long attempts = 0;
  for (int i = 0; i < count; ++i) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    switch (rel.tag) {
      case RelationTag::Birkhoff: {
        for (;;) {
          Vector x = draw_unit(s, rng);
          Vector z = draw_unit(s, rng);
          try {
            Vector y = orthogonal_partner(s, x, z);
            exact_zero_snap(s.support_set(x).vertices.front(), y);
            double ny = s.norm(y);
            if (ny <= 1e-9) throw degenerate_error("birkhoff partner collapsed");
            // rescale by a power of two: the snap is only worth keeping if
            // the scaling stays exact, and the relation ignores y's scale
            int ex = 0;
            std::frexp(ny, &ex);
            out.emplace_back(std::move(x), y * std::ldexp(1.0, -ex));
            break;
          } catch (const degenerate_error&) {
            if (++attempts > kMaxAttempts) exhausted("birkhoff pairs");
          }
        }
        break;
      }
      case RelationTag::Isosceles: {
        for (;;) {
          Vector x = draw_unit(s, rng);
          Vector y = draw_unit(s, rng);
          if (euclid_sine(x, y) <= 1e-9) {
            if (++attempts > kMaxAttempts) exhausted("isosceles pairs");
            continue;
          }
          out.push_back(isosceles_pair(x, y));
          break;
        }
        break;
      }
      case RelationTag::UnitIsosceles: {
        Vector u = draw_unit(s, rng);
        Vector v = unit_isosceles_partner(s, u, rng, attempts);
        out.emplace_back(std::move(u), std::move(v));
        break;
      }
      case RelationTag::Dragomir:
      case RelationTag::Chmielinski: {
        for (;;) {
          Vector x = draw_unit(s, rng);
          Vector y = draw_unit(s, rng);
          if (holds(s, rel, x, y)) {
            out.emplace_back(std::move(x), std::move(y));
            break;
          }
          if (++attempts > kMaxAttempts) exhausted("rejection sampling");
        }
        break;
      }
      case RelationTag::Roberts: {
        for (;;) {
          Vector x = draw_unit(s, rng);
          auto w = roberts_witness_search(s, x, kSamplerGrid);
          if (w) {
            out.emplace_back(std::move(x), std::move(*w));
            break;
          }
          attempts += kSamplerGrid;
          if (attempts > kMaxAttempts) exhausted("roberts witness search");
        }
        break;
      }
    }
  }
  return out;
}

std::vector<Vector> sample_partners(const NormedSpace& s, const OrthoRelation& rel,
                                    const Vector& x, std::uint64_t seed, int count) {
  if (count < 0) throw std::invalid_argument("sample_partners: count must be >= 0");
  check_unit(s, x, "sample_partners");
  if ((rel.tag == RelationTag::Dragomir || rel.tag == RelationTag::Chmielinski) &&
      rel.eps == 0.0)
    return sample_partners(s, OrthoRelation::birkhoff(), x, seed, count);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(count));
  long attempts = 0;

  if (rel.tag == RelationTag::Roberts) {
    if (s.dim() != 2)
      throw std::invalid_argument("sample_partners: roberts sampling needs dim 2");
    // one deterministic search; retries cannot change the outcome
    auto found = roberts_candidates(s, x, 4096);
    if (found.empty())
      throw exhaustion_error("sample_partners: x has no roberts partner");
    for (int i = 0; i < count; ++i)
      out.push_back(found[static_cast<std::size_t>(i) % found.size()]);
    return out;
  }

  for (int i = 0; i < count; ++i) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    switch (rel.tag) {
      case RelationTag::Birkhoff: {
        for (;;) {
          Vector z = draw_unit(s, rng);
          try {
            out.push_back(s.normalized(orthogonal_partner(s, x, z)));
            break;
          } catch (const degenerate_error&) {
            if (++attempts > kMaxAttempts) exhausted("birkhoff partners");
          }
        }
        break;
      }
      case RelationTag::Isosceles:
      case RelationTag::UnitIsosceles:
        out.push_back(unit_isosceles_partner(s, x, rng, attempts));
        break;
      case RelationTag::Dragomir:
      case RelationTag::Chmielinski: {
        for (;;) {
          Vector y = draw_unit(s, rng);
          if (holds(s, rel, x, y)) {
            out.push_back(std::move(y));
            break;
          }
          if (++attempts > kMaxAttempts) exhausted("rejection sampling");
        }
        break;
      }
      case RelationTag::Roberts:
        break;  // handled above
    }
  }
  return out;
}

}  // namespace ortho
