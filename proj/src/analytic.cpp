#include "spinreg/analytic.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "spinreg/specfun.hpp"

namespace spinreg::analytic {

namespace {

using cplx = std::complex<double>;

void check_s(int s) {
  if (s < 2 || s > 30)
    throw std::domain_error("analytic kernels: closed forms require integer s in [2, 30]");
}

void check_T(double T) {
  if (!(T > 0.0)) throw std::domain_error("analytic thermal kernels: require temperature > 0");
}

// (1+x^2)^((1-s)/2) cos((s-1) atan x)  and the sine companion.
double cfac(int s, double x) {
  return std::exp(0.5 * (1.0 - s) * std::log1p(x * x)) * std::cos((s - 1.0) * std::atan(x));
}
double sfac(int s, double x) {
  return std::exp(0.5 * (1.0 - s) * std::log1p(x * x)) * std::sin((s - 1.0) * std::atan(x));
}

double parity(int s) { return (s % 2 == 0) ? -1.0 : 1.0; }  // (-1)^(s-1)

}  // namespace

double gamma_vac(int s, double tau, double t) {
  check_s(s);
  if (t == 0.0) return 0.0;
  const auto [tp, tm] = retarded_times(t, tau);
  return 0.5 * specfun::gamma_fn(s - 1.0) * (2.0 * cfac(s, tau) - cfac(s, tp) - cfac(s, tm));
}

double gamma_th(int s, double tau, double t, double temperature) {
  check_s(s);
  check_T(temperature);
  if (t == 0.0) return 0.0;
  const auto [tp, tm] = retarded_times(t, tau);
  const double tauT = 1.0 / temperature;
  const cplx base(1.0 + 1.0 / tauT, 0.0);
  auto psi = [&](double x) { return specfun::polygamma(s - 2, base + cplx(0.0, x / tauT)); };
  const cplx bracket = 2.0 * psi(tau) - psi(tp) - psi(tm);
  return parity(s) * std::pow(tauT, 1.0 - s) * bracket.real();
}

double gamma_plus(int s, double tau, double t) {
  check_s(s);
  if (t == 0.0) return 0.0;
  const auto [tp, tm] = retarded_times(t, tau);
  const double drift =
      (s - 1.0) * t * std::exp(-0.5 * s * std::log1p(tau * tau)) * std::cos(s * std::atan(tau));
  return 0.5 * specfun::gamma_fn(s - 1.0) * (2.0 * drift - sfac(s, tp) - sfac(s, tm));
}

double gamma_minus(int s, double tau, double t) {
  check_s(s);
  if (t == 0.0 || tau == 0.0) return 0.0;
  const auto [tp, tm] = retarded_times(t, tau);
  return 0.25 * specfun::gamma_fn(s - 1.0) * (2.0 * sfac(s, tau) - sfac(s, tp) + sfac(s, tm));
}

double fidelity_th(int s, double tau, double t, double temperature) {
  check_s(s);
  check_T(temperature);
  if (t == 0.0) return 0.0;
  const auto [tp, tm] = retarded_times(t, tau);
  const double tauT = 1.0 / temperature;
  const double a = 0.5 / tauT;
  // Psi^(s-2)(1 + a + ix') - Psi^(s-2)(1/2 + a + ix') with x' = x/(2 tau_T)
  auto psidiff = [&](double x) {
    const cplx ix(0.0, 0.5 * x / tauT);
    return specfun::polygamma(s - 2, cplx(1.0 + a, 0.0) + ix) -
           specfun::polygamma(s - 2, cplx(0.5 + a, 0.0) + ix);
  };
  const cplx bracket = 2.0 * psidiff(tau) - psidiff(tp) - psidiff(tm);
  return parity(s) * std::pow(2.0 * tauT, 1.0 - s) * bracket.real();
}

double gamma_total(int s, double tau, double t, double temperature) {
  if (temperature == 0.0) return gamma_vac(s, tau, t);
  return gamma_vac(s, tau, t) + gamma_th(s, tau, t, temperature);
}

double fidelity_total(int s, double tau, double t, double temperature) {
  if (temperature == 0.0) return gamma_vac(s, tau, t);
  return gamma_vac(s, tau, t) + fidelity_th(s, tau, t, temperature);
}

double gamma_vac_longtime(int s, double tau) {
  check_s(s);
  return specfun::gamma_fn(s - 1.0) * cfac(s, tau);
}

}  // namespace spinreg::analytic
