#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace ortho {

// Dense real vector. Coordinates must be finite and the dimension positive;
// both are checked at construction so downstream code can assume them.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::vector<double> coords) : c_(std::move(coords)) { validate(); }
  Vector(std::initializer_list<double> coords) : c_(coords) { validate(); }
  static Vector zeros(int dim) { return Vector(std::vector<double>(check_dim(dim), 0.0)); }
  static Vector unit(int dim, int i) {
    Vector v = zeros(dim);
    v[i] = 1.0;
    return v;
  }

  int dim() const { return static_cast<int>(c_.size()); }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& coords() const { return c_; }

  Vector operator+(const Vector& o) const {
    Vector r = *this;
    for (int i = 0; i < dim(); ++i) r[i] += o[i];
    return r;
  }
  Vector operator-(const Vector& o) const {
    Vector r = *this;
    for (int i = 0; i < dim(); ++i) r[i] -= o[i];
    return r;
  }
  Vector operator*(double s) const {
    Vector r = *this;
    for (int i = 0; i < dim(); ++i) r[i] *= s;
    return r;
  }
  Vector operator-() const { return *this * -1.0; }

  friend Vector operator*(double s, const Vector& v) { return v * s; }

  // x + t*y without a temporary per element
  static Vector axpy(const Vector& x, double t, const Vector& y) {
    Vector r = x;
    for (int i = 0; i < x.dim(); ++i) r[i] += t * y[i];
    return r;
  }

  static double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
  }

  double norm2() const { return std::sqrt(dot(*this, *this)); }

  double max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::fabs(v));
    return m;
  }

  double linf_dist(const Vector& o) const {
    double m = 0.0;
    for (int i = 0; i < dim(); ++i) m = std::max(m, std::fabs(c_[static_cast<std::size_t>(i)] - o[i]));
    return m;
  }

 private:
  static int check_dim(int dim) {
    if (dim < 1) throw std::invalid_argument("vector dimension must be >= 1");
    return dim;
  }
  void validate() const {
    check_dim(dim());
    for (double v : c_)
      if (!std::isfinite(v)) throw std::invalid_argument("vector coordinates must be finite");
  }

  std::vector<double> c_;
};

}  // namespace ortho
