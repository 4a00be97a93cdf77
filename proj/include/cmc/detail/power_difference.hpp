#pragma once

#include <cmath>

namespace cmc::detail {

// (base + delta)^p - base^p, accurate when |delta| << base.
inline double pow_diff(double base, double delta, double p) {
  if (p == 0.0 || delta == 0.0) return 0.0;
  return std::pow(base, p) * std::expm1(p * std::log1p(delta / base));
}

// ((base + delta)^p - base^p) / delta, with the derivative at delta = 0.
inline double pow_ddiff(double base, double delta, double p) {
  if (p == 0.0) return 0.0;
  if (delta == 0.0) return p * std::pow(base, p - 1.0);
  return pow_diff(base, delta, p) / delta;
}

}  // namespace cmc::detail
