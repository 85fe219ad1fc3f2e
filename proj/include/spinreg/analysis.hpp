#pragma once
#include <Eigen/Dense>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinreg/bath.hpp"
#include "spinreg/kernels.hpp"
#include "spinreg/register.hpp"

namespace spinreg::analysis {

// Two-qubit pair taxonomy by the flip pattern Delta = eps - eps'.
enum class PairClass { diagonal, single_qubit, singlet, ghz };
PairClass classify_pair(const PairDelta& d);  // defined for L == 2 labels

// Collective-limit (all transit times zero) closures: every kernel matrix
// entry equals its diagonal, so the quadratic forms collapse to totals.
std::complex<double> collective_log_gamma(const RegisterLabel& a, const RegisterLabel& b,
                                          double gamma11, double gamma_plus11);
double collective_log_fidelity(const RegisterLabel& a, const RegisterLabel& b, double fid11);

enum class ProtectionMode { strong, weak };
enum class ProtectionClass { strong, weak, none };

// Maximal label sets immune to collective dephasing: the magnetization
// classes.  Under a collective coupling both the damping and the phase of
// any within-class pair vanish, so the strong and weak notions coincide and
// no larger weak set exists (a weak set forces constant magnetization).
std::vector<std::vector<RegisterLabel>> find_dfs_ofs(int L, ProtectionMode mode);

// Numerical re-check of a candidate protected set for a concrete bath and
// geometry: strong requires |gamma - 1| <= tol for every within-set pair on
// the whole time grid, weak only ||gamma| - 1| <= tol.
ProtectionClass check_dfs_general(const BathSpec& bath, const Geometry& geom,
                                  const std::vector<RegisterLabel>& labels,
                                  const std::vector<double>& t_grid, double tol);

// Initial register state in the pointer basis, validated Hermitian / unit
// trace / positive semidefinite.  Row order matches RegisterLabel::all(L).
class InitialRegister {
 public:
  explicit InitialRegister(Eigen::MatrixXcd coeffs);
  static InitialRegister uniform_superposition(int L);
  const Eigen::MatrixXcd& coeffs() const { return coeffs_; }
  int qubits() const { return qubits_; }

 private:
  Eigen::MatrixXcd coeffs_;
  int qubits_;
};

struct SbsPairEntry {
  RegisterLabel a, b;
  double abs_gamma = 0.0;                   // |decoherence factor|
  std::map<std::string, double> fidelity;   // per-macrofraction state fidelity
  std::optional<PairClass> two_qubit_class; // set when L == 2
  bool protected_pair = false;              // same protected class (collective)
};

struct CoarseBlock {
  std::vector<RegisterLabel> labels;  // protected class members in the support
  Eigen::MatrixXcd block;             // projected initial coefficients
  double magnetization = 0.0;         // environment tag shared by the block
};

struct SbsReport {
  double time = 0.0;
  std::vector<SbsPairEntry> pairs;  // unordered off-diagonal pairs, lexicographic
  std::vector<std::vector<RegisterLabel>> protected_classes;  // collective only
  // max over unprotected pairs of max(|gamma|, max_M fidelity); -> 0 as the
  // pointer structure broadcasts.
  double sbs_distance = 0.0;
  std::vector<CoarseBlock> blocks;  // surviving coarse-grained pointer sectors
};

SbsReport sbs_report(const InitialRegister& initial, const BathSpec& bath,
                     const Geometry& geom, double t, double tol = 1e-10);

}  // namespace spinreg::analysis
