#include "spinreg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "spinreg/numeric.hpp"
#include "spinreg/quadrature.hpp"

namespace spinreg::kernels {

namespace {

// Upper bound on int_c^inf w^(a-1) e^-w dw for c >= max(2a, 4): the first
// terms of the asymptotic expansion with a final geometric majorant.
double tail_gamma_bound(double a, double c) {
  double term = std::pow(c, a - 1.0) * std::exp(-c);
  double sum = term;
  for (int k = 1; k < 6; ++k) {
    term *= std::max(a - k, 0.0) / c;  // next |coefficient| / c, monotone here
    sum += term;
  }
  return 2.0 * sum;
}

// Cutoff where the neglected tail of every kernel integrand stays below
// tail_budget.  The integrands are bounded by J(w)/w^2 * (2 + wt) * coth(...),
// coth(w/2T) <= 1 + 2T/w.
double choose_cutoff(double s, double T, double t, double tail_budget) {
  double c = s * std::numbers::ln10 + 40.0;
  for (int iter = 0; iter < 64; ++iter) {
    const double cothcap = 1.0 + (T > 0.0 ? 2.0 * T / c : 0.0);
    const double bound =
        cothcap * (2.0 * tail_gamma_bound(s - 1.0, c) + std::max(t, 1.0) * tail_gamma_bound(s, c));
    if (bound <= tail_budget || !std::isfinite(bound)) return c;
    c += 10.0;
  }
  return c;
}

template <class F>
EntryResult integrate_window(F&& f, const FrequencyWindow& win, double s, double T,
                             double t, double tau, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("kernel entry: tolerance must be positive");
  const double tail_budget = 0.01 * tol;
  const double cutoff = choose_cutoff(s, T, t, tail_budget);
  const double panel = std::numbers::pi / std::max({std::abs(t), std::abs(tau), 1.0});

  std::size_t pieces = 0;
  for (const auto& [lo, hi] : win.intervals())
    if (std::min(hi, cutoff) > lo) ++pieces;

  EntryResult out;
  if (pieces == 0) return out;
  const double piece_tol = tol / static_cast<double>(pieces);
  for (const auto& [lo, hi] : win.intervals()) {
    const double hi_eff = std::min(hi, cutoff);
    if (hi_eff <= lo) continue;
    const auto r = quad::integrate(f, lo, hi_eff, piece_tol, panel);
    out.value += r.value;
    out.error += r.error;
    out.converged = out.converged && r.converged;
    if (hi > cutoff) out.error += tail_budget;
  }
  return out;
}

double sd_over_w2(const SpectralDensity& sd, double w) {
  return std::pow(w, sd.s - 2.0) * std::exp(-w);
}

}  // namespace

EntryResult window_entry(Kernel k, const SpectralDensity& sd, double T,
                         const FrequencyWindow& win, double tau, double t, double tol) {
  if (!(T >= 0.0)) throw std::invalid_argument("kernel entry: temperature must be >= 0");
  if (t == 0.0) return {};  // every integrand vanishes identically at t = 0

  switch (k) {
    case Kernel::gamma: {
      if (T == 0.0) {
        auto f = [&](double w) {
          return sd_over_w2(sd, w) * numeric::one_minus_cos(w * t) * std::cos(w * tau);
        };
        return integrate_window(f, win, sd.s, T, t, tau, tol);
      }
      const double half_tauT = 0.5 / T;
      auto f = [&](double w) {
        return sd_over_w2(sd, w) * numeric::one_minus_cos(w * t) *
               numeric::coth(w * half_tauT) * std::cos(w * tau);
      };
      return integrate_window(f, win, sd.s, T, t, tau, tol);
    }
    case Kernel::gamma_plus: {
      auto f = [&](double w) {
        return sd_over_w2(sd, w) * numeric::x_minus_sin(w * t) * std::cos(w * tau);
      };
      return integrate_window(f, win, sd.s, T, t, tau, tol);
    }
    case Kernel::gamma_minus: {
      auto f = [&](double w) {
        return 0.5 * sd_over_w2(sd, w) * numeric::one_minus_cos(w * t) * std::sin(w * tau);
      };
      return integrate_window(f, win, sd.s, T, t, tau, tol);
    }
    case Kernel::fidelity: {
      if (T == 0.0) {
        auto f = [&](double w) {
          return sd_over_w2(sd, w) * numeric::one_minus_cos(w * t) * std::cos(w * tau);
        };
        return integrate_window(f, win, sd.s, T, t, tau, tol);
      }
      const double half_tauT = 0.5 / T;
      auto f = [&](double w) {
        return sd_over_w2(sd, w) * numeric::one_minus_cos(w * t) *
               std::tanh(w * half_tauT) * std::cos(w * tau);
      };
      return integrate_window(f, win, sd.s, T, t, tau, tol);
    }
  }
  throw std::logic_error("window_entry: unknown kernel");
}

EntryResult gamma_entry(const BathSpec& bath, double tau, double t, double tol) {
  return window_entry(Kernel::gamma, bath.sd, bath.temperature, bath.unobserved, tau, t, tol);
}

EntryResult gamma_plus_entry(const BathSpec& bath, double tau, double t, double tol) {
  return window_entry(Kernel::gamma_plus, bath.sd, bath.temperature, bath.unobserved, tau, t, tol);
}

EntryResult gamma_minus_entry(const BathSpec& bath, double tau, double t, double tol) {
  return window_entry(Kernel::gamma_minus, bath.sd, bath.temperature, bath.unobserved, tau, t, tol);
}

EntryResult fidelity_entry(const BathSpec& bath, const std::string& macrofraction,
                           double tau, double t, double tol) {
  const auto it = bath.macrofractions.find(macrofraction);
  if (it == bath.macrofractions.end())
    throw std::invalid_argument("fidelity_entry: unknown macrofraction '" + macrofraction + "'");
  return window_entry(Kernel::fidelity, bath.sd, bath.temperature, it->second, tau, t, tol);
}

DephasingMatrices assemble(const BathSpec& bath, const Geometry& geom, double t, double tol) {
  const int L = geom.size();
  DephasingMatrices m;
  m.time = t;
  m.gamma = Eigen::MatrixXd::Zero(L, L);
  m.gamma_plus = Eigen::MatrixXd::Zero(L, L);
  m.gamma_minus = Eigen::MatrixXd::Zero(L, L);
  for (const auto& [name, win] : bath.macrofractions)
    m.fid[name] = Eigen::MatrixXd::Zero(L, L);
  if (t == 0.0) return m;

  auto track = [&m](const EntryResult& r) {
    m.quad_error = std::max(m.quad_error, r.error);
    m.quad_converged = m.quad_converged && r.converged;
    return r.value;
  };

  const double g_diag = track(gamma_entry(bath, 0.0, t, tol));
  const double gp_diag = track(gamma_plus_entry(bath, 0.0, t, tol));
  m.gamma.diagonal().setConstant(g_diag);
  m.gamma_plus.diagonal().setConstant(gp_diag);
  for (const auto& [name, win] : bath.macrofractions)
    m.fid[name].diagonal().setConstant(track(fidelity_entry(bath, name, 0.0, t, tol)));

  for (int n = 0; n < L; ++n) {
    for (int mm = n + 1; mm < L; ++mm) {
      const double tau = geom.tau(n, mm);
      if (tau == 0.0) {
        m.gamma(n, mm) = m.gamma(mm, n) = g_diag;
        m.gamma_plus(n, mm) = m.gamma_plus(mm, n) = gp_diag;
        for (auto& [name, mat] : m.fid) mat(n, mm) = mat(mm, n) = mat(n, n);
        continue;  // gamma_minus entry vanishes exactly at tau = 0
      }
      m.gamma(n, mm) = m.gamma(mm, n) = track(gamma_entry(bath, tau, t, tol));
      m.gamma_plus(n, mm) = m.gamma_plus(mm, n) = track(gamma_plus_entry(bath, tau, t, tol));
      const double gm = track(gamma_minus_entry(bath, tau, t, tol));
      m.gamma_minus(n, mm) = gm;
      m.gamma_minus(mm, n) = -gm;
      for (auto& [name, mat] : m.fid)
        mat(n, mm) = mat(mm, n) = track(fidelity_entry(bath, name, tau, t, tol));
    }
  }
  return m;
}

}  // namespace spinreg::kernels
