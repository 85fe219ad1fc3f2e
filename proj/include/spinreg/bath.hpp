#pragma once
#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace spinreg {

// Bath spectral density J(w) = w^s / Lambda^(s-1) * exp(-w/Lambda) in units
// where Lambda = 1 (and hbar = k_B = 1 throughout).
struct SpectralDensity {
  double s = 1.0;  // ohmicity exponent, s >= 1

  explicit SpectralDensity(double s_);
  double operator()(double w) const { return std::pow(w, s) * std::exp(-w); }
};

// Union of disjoint frequency intervals [lo, hi); hi may be +infinity.
class FrequencyWindow {
 public:
  using Interval = std::pair<double, double>;

  FrequencyWindow() = default;  // empty window
  explicit FrequencyWindow(std::vector<Interval> intervals);

  static FrequencyWindow full();
  static FrequencyWindow band(double lo, double hi);
  // Everything outside [lo, hi): the union [0, lo) u [hi, inf).
  static FrequencyWindow complement_band(double lo, double hi);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  bool disjoint_from(const FrequencyWindow& other) const;

 private:
  std::vector<Interval> intervals_;  // sorted, disjoint, non-empty intervals
};

// Pairwise transit times tau_nm = |x_n - x_m| / c between qubit sites.
struct Geometry {
  Eigen::MatrixXd tau;  // symmetric, zero diagonal; row/col order = qubit index

  static Geometry collective(int L);  // all transit times zero
  static Geometry from_transit_matrix(Eigen::MatrixXd tau);
  static Geometry from_positions(const std::vector<double>& x, double speed);

  int size() const { return static_cast<int>(tau.rows()); }
  bool is_collective(double tol = 0.0) const;
};

// Bath configuration: spectral density, temperature, the unobserved window
// (traced over; drives decoherence) and named observed macrofractions
// (each drives one fidelity matrix).
struct BathSpec {
  SpectralDensity sd;
  double temperature = 0.0;  // T >= 0; tau_T = 1/T
  FrequencyWindow unobserved;
  std::map<std::string, FrequencyWindow> macrofractions;

  BathSpec(SpectralDensity sd_, double T, FrequencyWindow unobserved_,
           std::map<std::string, FrequencyWindow> macrofractions_);

  // Full spectrum both unobserved and observed (macrofraction "full").  The
  // two windows coincide by construction here, so no disjointness applies.
  static BathSpec uncut(double s, double T);
  // Observed band [alpha, alpha+delta) as macrofraction "obs"; the rest of
  // the spectrum is unobserved.
  static BathSpec cut(double s, double T, double alpha, double delta);
};

}  // namespace spinreg
