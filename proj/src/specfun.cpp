#include "spinreg/specfun.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace spinreg::specfun {

namespace {

using cplx = std::complex<double>;

// B_2, B_4, ..., B_30
constexpr std::array<double, 15> kBern2j = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

// Asymptotic series are applied once Re z has been shifted past this.
constexpr double kShift = 18.0;

bool is_pole(cplx z) {
  if (z.imag() != 0.0) return false;
  const double x = z.real();
  return x <= 0.0 && x == std::floor(x);
}

// psi(z) for Re z >= kShift via the Stirling-type series.
cplx digamma_asymptotic(cplx w) {
  const cplx w2inv = 1.0 / (w * w);
  cplx sum = std::log(w) - 0.5 / w;
  cplx p = w2inv;
  for (std::size_t j = 0; j < kBern2j.size(); ++j) {
    sum -= kBern2j[j] / (2.0 * (j + 1)) * p;
    p *= w2inv;
  }
  return sum;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
  return std::tgamma(x);
}

std::complex<double> hurwitz_zeta(double s, std::complex<double> z) {
  if (!(s > 1.0)) throw std::domain_error("hurwitz_zeta: requires s > 1");
  if (!(z.real() > 0.0)) throw std::domain_error("hurwitz_zeta: requires Re z > 0");

  cplx acc = 0.0;
  while (z.real() < kShift) {
    acc += std::pow(z, -s);
    z += 1.0;
  }

  const cplx winv = 1.0 / z;
  const cplx wms = std::pow(z, -s);
  acc += wms * z / (s - 1.0);  // w^(1-s)/(s-1)
  acc += 0.5 * wms;

  // Euler-Maclaurin tail: sum_j B_2j/(2j)! (s)_(2j-1) w^(-s-2j+1)
  cplx wpow = wms * winv;
  double poch = s;
  double fact = 2.0;  // (2j)!
  for (std::size_t j = 0; j < kBern2j.size(); ++j) {
    acc += kBern2j[j] / fact * poch * wpow;
    const double s2j = s + 2.0 * (j + 1);
    poch *= (s2j - 1.0) * s2j;
    fact *= (2.0 * j + 3.0) * (2.0 * j + 4.0);
    wpow *= winv * winv;
  }
  return acc;
}

std::complex<double> polygamma(int m, std::complex<double> z) {
  if (m < 0) throw std::domain_error("polygamma: order must be >= 0");
  if (is_pole(z)) throw std::domain_error("polygamma: argument at a pole");

  if (m == 0) {
    cplx sub = 0.0;
    while (z.real() < kShift) {
      sub += 1.0 / z;
      z += 1.0;
    }
    return digamma_asymptotic(z) - sub;
  }

  // psi^(m)(z) = psi^(m)(z+N) - (-1)^m m! sum_k (z+k)^-(m+1)
  cplx sub = 0.0;
  while (z.real() <= 0.5) {
    sub += std::pow(z, -(m + 1.0));
    z += 1.0;
  }
  const double mf = std::tgamma(m + 1.0);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;  // (-1)^m
  return -sign * mf * hurwitz_zeta(m + 1.0, z) - sign * mf * sub;
}

}  // namespace spinreg::specfun
