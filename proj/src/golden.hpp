#pragma once

#include <cmath>

namespace ortho::detail {

struct GoldenResult {
  double x;
  double value;
  int evaluations;
};

// Golden-section minimization of a convex (or unimodal) function on [lo, hi]
// down to interval width xtol. Flat-bottomed convex functions are fine: the
// iterate just settles inside the flat region.
template <class F>
GoldenResult golden_min(F&& f, double lo, double hi, double xtol) {
  constexpr double kPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kPhi * (b - a);
  double d = a + kPhi * (b - a);
  double fc = f(c), fd = f(d);
  int evals = 2;
  while (b - a > xtol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kPhi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  return fc <= fd ? GoldenResult{c, fc, evals} : GoldenResult{d, fd, evals};
}

}  // namespace ortho::detail
