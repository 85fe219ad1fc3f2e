#include "spinreg/mode_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "spinreg/kernels.hpp"
#include "spinreg/numeric.hpp"

namespace spinreg::oracle {

namespace {

using cplx = std::complex<double>;

void check_mode(const ModeSpec& mode, const RegisterLabel& a, const RegisterLabel& b) {
  if (!(mode.omega > 0.0)) throw std::invalid_argument("mode oracle: omega must be positive");
  if (mode.phases.size() != a.size() || a.size() != b.size())
    throw std::invalid_argument("mode oracle: phases/labels dimension mismatch");
}

cplx weighted_sum(const ModeSpec& mode, const RegisterLabel& eps) {
  cplx u = 0.0;
  for (int n = 0; n < eps.size(); ++n)
    u += eps[n] * std::polar(mode.g, -mode.phases(n));
  return u;
}

double thermal_coth(double omega, double T) {
  return T > 0.0 ? numeric::coth(0.5 * omega / T) : 1.0;
}

double thermal_tanh(double omega, double T) {
  return T > 0.0 ? std::tanh(0.5 * omega / T) : 1.0;
}

}  // namespace

std::complex<double> alpha_t(double omega, double t) {
  if (!(omega > 0.0)) throw std::invalid_argument("alpha_t: omega must be positive");
  const double x = omega * t;
  return cplx(numeric::one_minus_cos(x), -std::sin(x)) / omega;
}

double xi_t(double omega, double t) {
  if (!(omega > 0.0)) throw std::invalid_argument("xi_t: omega must be positive");
  return numeric::x_minus_sin(omega * t) / (omega * omega);
}

double nbar(double omega, double T) {
  if (!(omega > 0.0)) throw std::invalid_argument("nbar: omega must be positive");
  if (!(T >= 0.0)) throw std::invalid_argument("nbar: temperature must be >= 0");
  return T > 0.0 ? 1.0 / std::expm1(omega / T) : 0.0;
}

std::complex<double> mode_decoherence(const ModeSpec& mode, const RegisterLabel& a,
                                      const RegisterLabel& b, double T, double t) {
  check_mode(mode, a, b);
  if (!(T >= 0.0)) throw std::invalid_argument("mode oracle: temperature must be >= 0");
  const cplx u = weighted_sum(mode, a);
  const cplx v = weighted_sum(mode, b);
  const cplx alpha = alpha_t(mode.omega, t);
  const double a2 = std::norm(alpha);
  const double damp = 0.5 * a2 * std::norm(u - v) * thermal_coth(mode.omega, T);
  const double phase = xi_t(mode.omega, t) * (std::norm(u) - std::norm(v)) +
                       a2 * std::imag(u * std::conj(v));
  return std::exp(cplx(-damp, phase));
}

double mode_fidelity(const ModeSpec& mode, const RegisterLabel& a,
                     const RegisterLabel& b, double T, double t) {
  check_mode(mode, a, b);
  if (!(T >= 0.0)) throw std::invalid_argument("mode oracle: temperature must be >= 0");
  const cplx du = weighted_sum(mode, a) - weighted_sum(mode, b);
  const double a2 = std::norm(alpha_t(mode.omega, t));
  return std::exp(-0.5 * a2 * std::norm(du) * thermal_tanh(mode.omega, T));
}

RiemannReport riemann_sum_check(const SpectralDensity& sd, double T, const ModeGrid& grid,
                                double tau, double t, double tol) {
  if (!(grid.omega_max > 0.0) || grid.n_modes < 1)
    throw std::invalid_argument("riemann_sum_check: bad mode grid");
  const double dw = grid.omega_max / static_cast<double>(grid.n_modes);

  RiemannReport rep;
  for (std::size_t j = 0; j < grid.n_modes; ++j) {
    const double w = (static_cast<double>(j) + 0.5) * dw;
    const double g2 = sd(w) * dw;                       // |g_k|^2
    const double a2 = std::norm(alpha_t(w, t));         // |alpha_k(t)|^2
    const double common = 0.5 * g2 * a2 * std::cos(w * tau);
    rep.gamma_mode_sum += common * thermal_coth(w, T);
    rep.fid_mode_sum += common * thermal_tanh(w, T);
  }

  const auto band = FrequencyWindow::band(0.0, grid.omega_max);
  rep.gamma_kernel = kernels::window_entry(kernels::Kernel::gamma, sd, T, band, tau, t, tol).value;
  rep.fid_kernel = kernels::window_entry(kernels::Kernel::fidelity, sd, T, band, tau, t, tol).value;

  auto rel = [](double a, double b) {
    const double scale = std::max(std::abs(b), 1e-300);
    return std::abs(a - b) / scale;
  };
  rep.gamma_rel_gap = rel(rep.gamma_mode_sum, rep.gamma_kernel);
  rep.fid_rel_gap = rel(rep.fid_mode_sum, rep.fid_kernel);
  rep.resolved = dw * std::max({std::abs(t), std::abs(tau), 1.0}) <= 0.05;
  return rep;
}

}  // namespace spinreg::oracle
