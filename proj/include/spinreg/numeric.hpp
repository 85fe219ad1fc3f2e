#pragma once
#include <cmath>

namespace spinreg::numeric {

// 1 - cos(x) without cancellation near x = 0.
inline double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

// x - sin(x); series branch keeps full relative accuracy for small x.
inline double x_minus_sin(double x) {
  const double ax = std::abs(x);
  if (ax < 0.5) {
    const double x2 = x * x;
    // x^3/6 (1 - x^2/20 + x^4/840 - x^6/60480 + x^8/6652800)
    double p = 1.0 + x2 * (-1.0 / 20.0 + x2 * (1.0 / 840.0 + x2 * (-1.0 / 60480.0 + x2 / 6652800.0)));
    return x * x2 / 6.0 * p;
  }
  return x - std::sin(x);
}

// coth(x) for x > 0, stable for both tiny and large arguments.
inline double coth(double x) { return 1.0 + 2.0 / std::expm1(2.0 * x); }

}  // namespace spinreg::numeric
