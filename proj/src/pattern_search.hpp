#pragma once

#include <cmath>
#include <utility>

#include "ortho/vector.hpp"

namespace ortho::detail {

// Coordinate pattern search for scale-invariant objectives on R^n \ {0}.
// Starts from x0, tries +/- steps along each axis, halves the step when a
// full pass yields no improvement. Returns the best argument found; *value
// receives the best objective. Used to polish sampled extrema; the driver
// guarantees g is scale invariant, so the iterate is renormalized freely.
template <class G>
Vector pattern_maximize(G&& g, Vector x, double* value, int max_passes = 200,
                        double step0 = 0.5, double step_min = 1e-9) {
  double scale = x.max_abs();
  if (scale > 0.0) x = x * (1.0 / scale);
  double best = g(x);
  double step = step0;
  for (int pass = 0; pass < max_passes && step >= step_min; ++pass) {
    bool improved = false;
    for (int i = 0; i < x.dim(); ++i) {
      for (double s : {1.0, -1.0}) {
        Vector trial = x;
        trial[i] += s * step;
        if (trial.max_abs() == 0.0) continue;
        double v = g(trial);
        if (v > best) {
          best = v;
          x = trial * (1.0 / trial.max_abs());
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  if (value) *value = best;
  return x;
}

}  // namespace ortho::detail
