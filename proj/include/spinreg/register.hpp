#pragma once
#include <Eigen/Dense>
#include <compare>
#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace spinreg {

// Pointer-basis label of the L-qubit register: eigenvalues +-1/2 per qubit.
// String form uses '+'/'-'; lexicographic order puts '+' before '-'.
class RegisterLabel {
 public:
  explicit RegisterLabel(Eigen::VectorXd spins);
  static RegisterLabel parse(std::string_view text);
  // All 2^L labels in lexicographic order ("++..+" first).  L <= 12.
  static std::vector<RegisterLabel> all(int L);

  int size() const { return static_cast<int>(spins_.size()); }
  double operator[](int n) const { return spins_(n); }
  const Eigen::VectorXd& spins() const { return spins_; }
  double magnetization() const { return spins_.sum(); }
  std::string str() const;

  bool operator==(const RegisterLabel& o) const { return spins_ == o.spins_; }
  std::strong_ordering operator<=>(const RegisterLabel& o) const;

 private:
  Eigen::VectorXd spins_;
};

// An ordered pair of labels together with Delta = eps - eps'.
struct PairDelta {
  RegisterLabel a, b;    // (eps, eps')
  Eigen::VectorXd delta; // a.spins() - b.spins()
};

PairDelta pair_delta(const RegisterLabel& a, const RegisterLabel& b);

// Kernel matrices of the dephasing process at one instant.  gamma, gamma_plus
// and every fid window matrix are symmetric with equal diagonals; gamma_minus
// is antisymmetric.  All vanish identically at time = 0.
struct DephasingMatrices {
  Eigen::MatrixXd gamma;        // decoherence kernel (unobserved window)
  Eigen::MatrixXd gamma_plus;   // phase kernel, diagonal part
  Eigen::MatrixXd gamma_minus;  // phase kernel, cross part
  std::map<std::string, Eigen::MatrixXd> fid;  // per-macrofraction fidelity kernels
  double time = 0.0;
  double quad_error = 0.0;      // max absolute quadrature error over entries
  bool quad_converged = true;   // false if any entry missed its error budget

  int size() const { return static_cast<int>(gamma.rows()); }
};

// -log of the decoherence factor between labels (a, b):
//   Delta^T G Delta + i [a^T G+ a - b^T G+ b - 2 a^T G- b]
std::complex<double> log_decoherence(const PairDelta& d, const DephasingMatrices& m);

// Real part only: Delta^T G Delta.
double log_real_decoherence(const PairDelta& d, const DephasingMatrices& m);

// -log of the state fidelity accumulated in one observed macrofraction:
//   Delta^T B Delta
double log_fidelity(const PairDelta& d, const DephasingMatrices& m,
                    const std::string& macrofraction);

// Exponents here use the +-1/2 register convention; multiply by this to
// compare with the sigma_z (eigenvalues +-1) spin-boson normalization.
inline constexpr double spin_boson_factor = 4.0;

}  // namespace spinreg
