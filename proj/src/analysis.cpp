#include "spinreg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace spinreg::analysis {

namespace {

using cplx = std::complex<double>;

// Integer magnetization key 2*sum(eps) = (#plus - #minus).
int mag_key(const RegisterLabel& l) {
  return static_cast<int>(std::lround(2.0 * l.magnetization()));
}

}  // namespace

PairClass classify_pair(const PairDelta& d) {
  if (d.delta.size() != 2)
    throw std::invalid_argument("classify_pair: taxonomy is defined for two-qubit labels");
  const double p = d.delta(0) * d.delta(1);
  if (d.delta(0) == 0.0 && d.delta(1) == 0.0) return PairClass::diagonal;
  if (p == 0.0) return PairClass::single_qubit;
  return p < 0.0 ? PairClass::singlet : PairClass::ghz;
}

std::complex<double> collective_log_gamma(const RegisterLabel& a, const RegisterLabel& b,
                                          double gamma11, double gamma_plus11) {
  if (a.size() != b.size())
    throw std::invalid_argument("collective_log_gamma: labels must have equal length");
  const double sa = a.magnetization();
  const double sb = b.magnetization();
  return {gamma11 * (sa - sb) * (sa - sb), gamma_plus11 * (sa * sa - sb * sb)};
}

double collective_log_fidelity(const RegisterLabel& a, const RegisterLabel& b, double fid11) {
  if (a.size() != b.size())
    throw std::invalid_argument("collective_log_fidelity: labels must have equal length");
  const double d = a.magnetization() - b.magnetization();
  return fid11 * d * d;
}

std::vector<std::vector<RegisterLabel>> find_dfs_ofs(int L, ProtectionMode /*mode*/) {
  // Strong and weak protection pick out the same partition here; see header.
  std::map<int, std::vector<RegisterLabel>, std::greater<>> classes;
  for (auto& l : RegisterLabel::all(L)) classes[mag_key(l)].push_back(std::move(l));
  std::vector<std::vector<RegisterLabel>> out;
  out.reserve(classes.size());
  for (auto& [key, members] : classes) out.push_back(std::move(members));
  return out;
}

ProtectionClass check_dfs_general(const BathSpec& bath, const Geometry& geom,
                                  const std::vector<RegisterLabel>& labels,
                                  const std::vector<double>& t_grid, double tol) {
  if (labels.empty()) throw std::invalid_argument("check_dfs_general: empty label set");
  if (t_grid.empty()) throw std::invalid_argument("check_dfs_general: empty time grid");
  for (const auto& l : labels)
    if (l.size() != geom.size())
      throw std::invalid_argument("check_dfs_general: label/geometry size mismatch");

  bool strong = true, weak = true;
  for (const double t : t_grid) {
    const auto m = kernels::assemble(bath, geom, t);
    for (std::size_t i = 0; i < labels.size() && weak; ++i) {
      for (std::size_t j = i + 1; j < labels.size() && weak; ++j) {
        const cplx gamma = std::exp(-log_decoherence(pair_delta(labels[i], labels[j]), m));
        if (std::abs(gamma - 1.0) > tol) strong = false;
        if (std::abs(std::abs(gamma) - 1.0) > tol) weak = false;
      }
    }
    if (!weak) break;
  }
  if (strong) return ProtectionClass::strong;
  return weak ? ProtectionClass::weak : ProtectionClass::none;
}

InitialRegister::InitialRegister(Eigen::MatrixXcd coeffs) : coeffs_(std::move(coeffs)) {
  const auto dim = coeffs_.rows();
  if (dim < 2 || coeffs_.cols() != dim)
    throw std::invalid_argument("InitialRegister: coefficient matrix must be square");
  int L = 0;
  while ((Eigen::Index{1} << L) < dim) ++L;
  if ((Eigen::Index{1} << L) != dim || L > 12)
    throw std::invalid_argument("InitialRegister: dimension must be 2^L with L <= 12");
  qubits_ = L;

  const double scale = std::max(1.0, coeffs_.cwiseAbs().maxCoeff());
  if ((coeffs_ - coeffs_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("InitialRegister: coefficients must be Hermitian");
  if (std::abs(coeffs_.trace() - cplx(1.0, 0.0)) > 1e-10)
    throw std::invalid_argument("InitialRegister: trace must be 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(coeffs_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("InitialRegister: must be positive semidefinite");
}

InitialRegister InitialRegister::uniform_superposition(int L) {
  const Eigen::Index dim = Eigen::Index{1} << L;
  return InitialRegister(Eigen::MatrixXcd::Constant(dim, dim, 1.0 / static_cast<double>(dim)));
}

SbsReport sbs_report(const InitialRegister& initial, const BathSpec& bath,
                     const Geometry& geom, double t, double tol) {
  const int L = geom.size();
  if (initial.qubits() != L)
    throw std::invalid_argument("sbs_report: initial state / geometry size mismatch");

  const auto m = kernels::assemble(bath, geom, t, tol);
  const auto labels = RegisterLabel::all(L);
  const bool collective = geom.is_collective();

  SbsReport rep;
  rep.time = t;
  double dist = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      SbsPairEntry e{labels[i], labels[j], 0.0, {}, std::nullopt, false};
      const auto pd = pair_delta(e.a, e.b);
      e.abs_gamma = std::exp(-log_real_decoherence(pd, m));
      double worst = e.abs_gamma;
      for (const auto& [name, win] : m.fid) {
        const double f = std::exp(-log_fidelity(pd, m, name));
        e.fidelity[name] = f;
        worst = std::max(worst, f);
      }
      if (L == 2) e.two_qubit_class = classify_pair(pd);
      e.protected_pair = collective && mag_key(e.a) == mag_key(e.b);
      if (!e.protected_pair) dist = std::max(dist, worst);
      rep.pairs.push_back(std::move(e));
    }
  }
  rep.sbs_distance = dist;

  if (collective) {
    rep.protected_classes = find_dfs_ofs(L, ProtectionMode::strong);
    for (const auto& cls : rep.protected_classes) {
      std::vector<Eigen::Index> idx;
      for (const auto& l : cls) {
        const auto it = std::lower_bound(labels.begin(), labels.end(), l);
        const auto k = static_cast<Eigen::Index>(it - labels.begin());
        if (std::abs(initial.coeffs()(k, k)) > 1e-14) idx.push_back(k);
      }
      if (idx.size() < 2) continue;  // nothing off-diagonal left to protect
      CoarseBlock blk;
      blk.block.resize(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
      for (std::size_t r = 0; r < idx.size(); ++r) {
        blk.labels.push_back(labels[static_cast<std::size_t>(idx[r])]);
        for (std::size_t c = 0; c < idx.size(); ++c)
          blk.block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              initial.coeffs()(idx[r], idx[c]);
      }
      blk.magnetization = blk.labels.front().magnetization();
      rep.blocks.push_back(std::move(blk));
    }
  }
  return rep;
}

}  // namespace spinreg::analysis
