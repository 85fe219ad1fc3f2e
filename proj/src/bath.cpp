#include "spinreg/bath.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace spinreg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SpectralDensity::SpectralDensity(double s_) : s(s_) {
  if (!(s >= 1.0)) throw std::invalid_argument("SpectralDensity: requires s >= 1");
}

FrequencyWindow::FrequencyWindow(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end());
  for (const auto& [lo, hi] : intervals) {
    if (!(lo >= 0.0)) throw std::invalid_argument("FrequencyWindow: lower edge must be >= 0");
    if (!(hi >= lo)) throw std::invalid_argument("FrequencyWindow: interval edges out of order");
    if (hi == lo) continue;  // drop empty intervals
    if (!intervals_.empty() && lo < intervals_.back().second)
      throw std::invalid_argument("FrequencyWindow: intervals overlap");
    intervals_.emplace_back(lo, hi);
  }
}

FrequencyWindow FrequencyWindow::full() { return FrequencyWindow({{0.0, kInf}}); }

FrequencyWindow FrequencyWindow::band(double lo, double hi) {
  return FrequencyWindow({{lo, hi}});
}

FrequencyWindow FrequencyWindow::complement_band(double lo, double hi) {
  if (!(lo >= 0.0) || !(hi >= lo))
    throw std::invalid_argument("FrequencyWindow: bad band edges");
  std::vector<Interval> iv;
  if (lo > 0.0) iv.emplace_back(0.0, lo);
  if (hi < kInf) iv.emplace_back(hi, kInf);
  return FrequencyWindow(std::move(iv));
}

bool FrequencyWindow::disjoint_from(const FrequencyWindow& other) const {
  for (const auto& [a, b] : intervals_)
    for (const auto& [c, d] : other.intervals_)
      if (a < d && c < b) return false;
  return true;
}

Geometry Geometry::collective(int L) {
  if (L < 1) throw std::invalid_argument("Geometry: register size must be >= 1");
  Geometry g;
  g.tau = Eigen::MatrixXd::Zero(L, L);
  return g;
}

Geometry Geometry::from_transit_matrix(Eigen::MatrixXd tau) {
  if (tau.rows() != tau.cols() || tau.rows() < 1)
    throw std::invalid_argument("Geometry: transit matrix must be square and non-empty");
  for (int n = 0; n < tau.rows(); ++n) {
    if (tau(n, n) != 0.0)
      throw std::invalid_argument("Geometry: transit matrix diagonal must be zero");
    for (int m = 0; m < tau.cols(); ++m) {
      if (!(tau(n, m) >= 0.0))
        throw std::invalid_argument("Geometry: transit times must be >= 0");
      if (tau(n, m) != tau(m, n))
        throw std::invalid_argument("Geometry: transit matrix must be symmetric");
    }
  }
  Geometry g;
  g.tau = std::move(tau);
  return g;
}

Geometry Geometry::from_positions(const std::vector<double>& x, double speed) {
  if (x.empty()) throw std::invalid_argument("Geometry: need at least one position");
  if (!(speed > 0.0)) throw std::invalid_argument("Geometry: speed must be positive");
  const int L = static_cast<int>(x.size());
  Eigen::MatrixXd tau = Eigen::MatrixXd::Zero(L, L);
  for (int n = 0; n < L; ++n)
    for (int m = 0; m < L; ++m) tau(n, m) = std::abs(x[n] - x[m]) / speed;
  return from_transit_matrix(std::move(tau));
}

bool Geometry::is_collective(double tol) const { return tau.maxCoeff() <= tol; }

BathSpec::BathSpec(SpectralDensity sd_, double T, FrequencyWindow unobserved_,
                   std::map<std::string, FrequencyWindow> macrofractions_)
    : sd(sd_), temperature(T), unobserved(std::move(unobserved_)),
      macrofractions(std::move(macrofractions_)) {
  if (!(temperature >= 0.0)) throw std::invalid_argument("BathSpec: temperature must be >= 0");
  std::vector<const FrequencyWindow*> windows;
  windows.push_back(&unobserved);
  for (const auto& [name, win] : macrofractions) {
    if (name.empty()) throw std::invalid_argument("BathSpec: macrofraction id must be non-empty");
    windows.push_back(&win);
  }
  for (std::size_t i = 0; i < windows.size(); ++i)
    for (std::size_t j = i + 1; j < windows.size(); ++j)
      if (!windows[i]->disjoint_from(*windows[j]))
        throw std::invalid_argument("BathSpec: unobserved/macrofraction windows must be disjoint");
}

BathSpec BathSpec::uncut(double s, double T) {
  BathSpec b{SpectralDensity(s), T, FrequencyWindow(), {}};
  // The uncut configuration evaluates decoherence and fidelity over the same
  // full spectrum, so the disjointness check is deliberately bypassed.
  b.unobserved = FrequencyWindow::full();
  b.macrofractions = {{"full", FrequencyWindow::full()}};
  return b;
}

BathSpec BathSpec::cut(double s, double T, double alpha, double delta) {
  if (!(alpha >= 0.0) || !(delta >= 0.0))
    throw std::invalid_argument("BathSpec: cut requires alpha >= 0 and delta >= 0");
  return BathSpec(SpectralDensity(s), T, FrequencyWindow::complement_band(alpha, alpha + delta),
                  {{"obs", FrequencyWindow::band(alpha, alpha + delta)}});
}

}  // namespace spinreg
