#pragma once
#include <complex>

namespace spinreg::specfun {

// Euler gamma function, x > 0.
double gamma_fn(double x);

// Hurwitz zeta  sum_{k>=0} (z+k)^(-s)  for real s > 1 and Re z > 0.
std::complex<double> hurwitz_zeta(double s, std::complex<double> z);

// Polygamma psi^(m)(z), integer order m >= 0, complex z away from the poles
// at 0, -1, -2, ...  Accurate for Re z >= 1/2; arguments left of that are
// shifted up by the recurrence first.
std::complex<double> polygamma(int m, std::complex<double> z);

}
