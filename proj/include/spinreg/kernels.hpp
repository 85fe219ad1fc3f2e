#pragma once
#include <string>

#include "spinreg/bath.hpp"
#include "spinreg/register.hpp"

namespace spinreg::kernels {

struct EntryResult {
  double value = 0.0;
  double error = 0.0;  // absolute quadrature error estimate
  bool converged = true;
};

enum class Kernel { gamma, gamma_plus, gamma_minus, fidelity };

// One matrix entry as a frequency integral over an arbitrary window:
//   gamma:       J(w)/w^2 (1-cos wt) coth(w/2T) cos(w tau)
//   gamma_plus:  J(w)/w^2 (wt - sin wt)          cos(w tau)
//   gamma_minus: J(w)/w^2 (1-cos wt) / 2         sin(w tau)
//   fidelity:    J(w)/w^2 (1-cos wt) tanh(w/2T)  cos(w tau)
// T = 0 sends both coth and tanh factors to 1.
EntryResult window_entry(Kernel k, const SpectralDensity& sd, double T,
                         const FrequencyWindow& win, double tau, double t,
                         double tol = 1e-10);

// Entries over the windows a BathSpec designates for each quantity.
EntryResult gamma_entry(const BathSpec& bath, double tau, double t, double tol = 1e-10);
EntryResult gamma_plus_entry(const BathSpec& bath, double tau, double t, double tol = 1e-10);
EntryResult gamma_minus_entry(const BathSpec& bath, double tau, double t, double tol = 1e-10);
EntryResult fidelity_entry(const BathSpec& bath, const std::string& macrofraction,
                           double tau, double t, double tol = 1e-10);

// Full kernel matrices for a register geometry at time t.  Diagonals are
// computed once and shared; off-diagonal orientation of gamma_minus follows
// the index order (entry (n,m) with n < m uses +tau_nm).
DephasingMatrices assemble(const BathSpec& bath, const Geometry& geom, double t,
                           double tol = 1e-10);

}  // namespace spinreg::kernels
