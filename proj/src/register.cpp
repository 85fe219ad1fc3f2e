#include "spinreg/register.hpp"

#include <stdexcept>

namespace spinreg {

namespace {
constexpr int kMaxRegister = 12;
}

RegisterLabel::RegisterLabel(Eigen::VectorXd spins) : spins_(std::move(spins)) {
  if (spins_.size() < 1 || spins_.size() > kMaxRegister)
    throw std::invalid_argument("RegisterLabel: size must be in [1, 12]");
  for (int n = 0; n < spins_.size(); ++n)
    if (spins_(n) != 0.5 && spins_(n) != -0.5)
      throw std::invalid_argument("RegisterLabel: spins must be +-1/2");
}

RegisterLabel RegisterLabel::parse(std::string_view text) {
  Eigen::VectorXd v(static_cast<int>(text.size()));
  for (std::size_t n = 0; n < text.size(); ++n) {
    if (text[n] == '+') v(static_cast<int>(n)) = 0.5;
    else if (text[n] == '-') v(static_cast<int>(n)) = -0.5;
    else throw std::invalid_argument("RegisterLabel: expected only '+'/'-' characters");
  }
  return RegisterLabel(std::move(v));
}

std::vector<RegisterLabel> RegisterLabel::all(int L) {
  if (L < 1 || L > kMaxRegister)
    throw std::invalid_argument("RegisterLabel: size must be in [1, 12]");
  std::vector<RegisterLabel> out;
  out.reserve(std::size_t{1} << L);
  for (std::size_t code = 0; code < (std::size_t{1} << L); ++code) {
    Eigen::VectorXd v(L);
    for (int n = 0; n < L; ++n)
      v(n) = ((code >> (L - 1 - n)) & 1) ? -0.5 : 0.5;
    out.emplace_back(std::move(v));
  }
  return out;
}

std::string RegisterLabel::str() const {
  std::string s(static_cast<std::size_t>(size()), '+');
  for (int n = 0; n < size(); ++n)
    if (spins_(n) < 0.0) s[static_cast<std::size_t>(n)] = '-';
  return s;
}

std::strong_ordering RegisterLabel::operator<=>(const RegisterLabel& o) const {
  if (auto c = size() <=> o.size(); c != 0) return c;
  for (int n = 0; n < size(); ++n) {
    // '+' (+1/2) sorts before '-' (-1/2)
    if (spins_(n) != o.spins_(n)) return spins_(n) > o.spins_(n) ? std::strong_ordering::less
                                                                 : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

PairDelta pair_delta(const RegisterLabel& a, const RegisterLabel& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("pair_delta: labels must have equal length");
  return PairDelta{a, b, a.spins() - b.spins()};
}

namespace {
void check_dims(const PairDelta& d, const DephasingMatrices& m) {
  if (d.delta.size() != m.gamma.rows() || m.gamma.rows() != m.gamma.cols())
    throw std::invalid_argument("dephasing ops: label/matrix dimension mismatch");
}
}  // namespace

std::complex<double> log_decoherence(const PairDelta& d, const DephasingMatrices& m) {
  check_dims(d, m);
  const auto& ea = d.a.spins();
  const auto& eb = d.b.spins();
  const double re = d.delta.dot(m.gamma * d.delta);
  const double im = ea.dot(m.gamma_plus * ea) - eb.dot(m.gamma_plus * eb) -
                    2.0 * ea.dot(m.gamma_minus * eb);
  return {re, im};
}

double log_real_decoherence(const PairDelta& d, const DephasingMatrices& m) {
  check_dims(d, m);
  return d.delta.dot(m.gamma * d.delta);
}

double log_fidelity(const PairDelta& d, const DephasingMatrices& m,
                    const std::string& macrofraction) {
  const auto it = m.fid.find(macrofraction);
  if (it == m.fid.end())
    throw std::invalid_argument("log_fidelity: unknown macrofraction '" + macrofraction + "'");
  if (d.delta.size() != it->second.rows())
    throw std::invalid_argument("dephasing ops: label/matrix dimension mismatch");
  return d.delta.dot(it->second * d.delta);
}

}  // namespace spinreg
