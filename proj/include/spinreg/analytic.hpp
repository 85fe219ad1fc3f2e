#pragma once

namespace spinreg::analytic {

// Advanced/retarded combinations of evolution time and transit time.
struct RetardedTimes {
  double plus;   // t + tau
  double minus;  // t - tau
};
inline RetardedTimes retarded_times(double t, double tau) { return {t + tau, t - tau}; }

// Closed forms of the full-spectrum kernel entries for integer s >= 2
// (exponential-cutoff spectral density, Lambda = 1).  Thermal pieces require
// temperature > 0; totals accept T = 0 and reduce to the vacuum terms.
double gamma_vac(int s, double tau, double t);
double gamma_th(int s, double tau, double t, double temperature);
double gamma_plus(int s, double tau, double t);
double gamma_minus(int s, double tau, double t);
double fidelity_th(int s, double tau, double t, double temperature);

double gamma_total(int s, double tau, double t, double temperature);
double fidelity_total(int s, double tau, double t, double temperature);

// t -> inf limit of gamma_vac at fixed separation.
double gamma_vac_longtime(int s, double tau);

}  // namespace spinreg::analytic
