#pragma once
#include <Eigen/Dense>
#include <complex>
#include <cstddef>

#include "spinreg/bath.hpp"
#include "spinreg/register.hpp"

namespace spinreg::oracle {

// Conditional displacement amplitude (1 - e^{i w t})/w and the accumulated
// self-phase (w t - sin w t)/w^2 of one driven mode.
std::complex<double> alpha_t(double omega, double t);
double xi_t(double omega, double t);

// A single bath mode coupled to the register: frequency, real coupling
// amplitude, and per-qubit propagation phases k.x_n.
struct ModeSpec {
  double omega = 1.0;
  double g = 1.0;
  Eigen::VectorXd phases;
};

// Exact single-mode decoherence factor tr[U(a) rho_th U(b)^dag] and Uhlmann
// fidelity between the two conditionally displaced thermal states.
std::complex<double> mode_decoherence(const ModeSpec& mode, const RegisterLabel& a,
                                      const RegisterLabel& b, double T, double t);
double mode_fidelity(const ModeSpec& mode, const RegisterLabel& a,
                     const RegisterLabel& b, double T, double t);

// Mean occupation of a thermal mode.
double nbar(double omega, double T);

// Uniform midpoint discretization of [0, omega_max] into n_modes modes.
struct ModeGrid {
  double omega_max = 1.0;
  std::size_t n_modes = 1;
};

// Riemann sums of the discrete mode formulas against the continuum kernel
// entries over the same band; validates the quadrature independently.
struct RiemannReport {
  double gamma_mode_sum = 0.0;
  double gamma_kernel = 0.0;
  double gamma_rel_gap = 0.0;
  double fid_mode_sum = 0.0;
  double fid_kernel = 0.0;
  double fid_rel_gap = 0.0;
  bool resolved = true;  // grid spacing resolves the fastest oscillation
};
RiemannReport riemann_sum_check(const SpectralDensity& sd, double T, const ModeGrid& grid,
                                double tau, double t, double tol = 1e-10);

}  // namespace spinreg::oracle
