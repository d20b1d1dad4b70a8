#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace ortho::detail {

// compact decimal text: integers without a fraction part, everything else
// at 12 significant digits, infinities as "inf"/"-inf"
inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[40];
  if (v == std::floor(v) && std::fabs(v) < 1e15)
    std::snprintf(buf, sizeof buf, "%.0f", v);
  else
    std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// value quantized to 12 significant digits, the precision reports carry
inline double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

}  // namespace ortho::detail
