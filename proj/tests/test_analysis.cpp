#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <random>

#include "spinreg/analysis.hpp"
#include "spinreg/kernels.hpp"

using namespace spinreg;
using analysis::PairClass;
using analysis::ProtectionClass;
using analysis::ProtectionMode;

namespace {
long binom(int n, int k) {
  long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - j + 1) / j;
  return r;
}
}  // namespace

TEST_CASE("two-qubit pair taxonomy") {
  const auto pp = RegisterLabel::parse("++");
  const auto pm = RegisterLabel::parse("+-");
  const auto mp = RegisterLabel::parse("-+");
  const auto mm = RegisterLabel::parse("--");
  CHECK(analysis::classify_pair(pair_delta(pp, pp)) == PairClass::diagonal);
  CHECK(analysis::classify_pair(pair_delta(pp, pm)) == PairClass::single_qubit);
  CHECK(analysis::classify_pair(pair_delta(mp, mm)) == PairClass::single_qubit);
  CHECK(analysis::classify_pair(pair_delta(pm, mp)) == PairClass::singlet);
  CHECK(analysis::classify_pair(pair_delta(mp, pm)) == PairClass::singlet);
  CHECK(analysis::classify_pair(pair_delta(pp, mm)) == PairClass::ghz);
  CHECK(analysis::classify_pair(pair_delta(mm, pp)) == PairClass::ghz);
  CHECK_THROWS_AS(
      analysis::classify_pair(pair_delta(RegisterLabel::parse("+++"), RegisterLabel::parse("++-"))),
      std::invalid_argument);
}

TEST_CASE("two-qubit taxonomy closure over all ordered pairs") {
  const auto labels = RegisterLabel::all(2);
  std::map<PairClass, int> counts;
  for (const auto& a : labels)
    for (const auto& b : labels) counts[analysis::classify_pair(pair_delta(a, b))]++;
  CHECK(counts[PairClass::diagonal] == 4);
  CHECK(counts[PairClass::single_qubit] == 8);
  CHECK(counts[PairClass::singlet] == 2);
  CHECK(counts[PairClass::ghz] == 2);
}

TEST_CASE("collective closures match the full contraction") {
  const auto bath = BathSpec::uncut(3.0, 0.5);
  for (int L : {2, 3}) {
    const auto m = kernels::assemble(bath, Geometry::collective(L), 2.2);
    const auto labels = RegisterLabel::all(L);
    for (const auto& a : labels)
      for (const auto& b : labels) {
        const auto full = log_decoherence(pair_delta(a, b), m);
        const auto closed =
            analysis::collective_log_gamma(a, b, m.gamma(0, 0), m.gamma_plus(0, 0));
        CHECK(std::abs(full - closed) < 1e-13 * std::max(1.0, std::abs(full)));
        const double ffull = log_fidelity(pair_delta(a, b), m, "full");
        const double fclosed = analysis::collective_log_fidelity(a, b, m.fid.at("full")(0, 0));
        CHECK(std::abs(ffull - fclosed) < 1e-13 * std::max(1.0, ffull));
      }
  }
}

TEST_CASE("protected sets are the magnetization classes") {
  for (int L : {2, 3, 6}) {
    for (auto mode : {ProtectionMode::strong, ProtectionMode::weak}) {
      const auto classes = analysis::find_dfs_ofs(L, mode);
      REQUIRE(static_cast<int>(classes.size()) == L + 1);
      std::size_t total = 0;
      double prev_mag = 1e9;
      for (int k = 0; k <= L; ++k) {
        CHECK(static_cast<long>(classes[k].size()) == binom(L, k));
        total += classes[k].size();
        const double mag = classes[k].front().magnetization();
        CHECK(mag < prev_mag);  // ordered by descending magnetization
        prev_mag = mag;
        for (const auto& l : classes[k]) CHECK(l.magnetization() == doctest::Approx(mag));
      }
      CHECK(total == (std::size_t{1} << L));
    }
  }
  CHECK_THROWS_AS(analysis::find_dfs_ofs(0, ProtectionMode::strong), std::invalid_argument);
}

TEST_CASE("numerical protection check on a collective bath") {
  const auto bath = BathSpec::uncut(5.0, 1.0 / 3.0);
  const auto geom = Geometry::collective(2);
  const std::vector<double> grid{0.5, 1.5, 4.0};
  const auto classes = analysis::find_dfs_ofs(2, ProtectionMode::strong);
  // Magnetization-zero class {+-, -+} survives exactly.
  CHECK(analysis::check_dfs_general(bath, geom, classes[1], grid, 1e-10) ==
        ProtectionClass::strong);
  // A mixed-magnetization set does not.
  const std::vector<RegisterLabel> mixed{RegisterLabel::parse("++"), RegisterLabel::parse("+-")};
  CHECK(analysis::check_dfs_general(bath, geom, mixed, grid, 1e-10) == ProtectionClass::none);
}

TEST_CASE("numerical protection check with distant qubits") {
  const auto bath = BathSpec::uncut(5.0, 1.0 / 3.0);
  const auto geom = Geometry::from_positions({0.0, 5.0}, 1.0);
  const std::vector<RegisterLabel> singlet{RegisterLabel::parse("+-"), RegisterLabel::parse("-+")};
  CHECK(analysis::check_dfs_general(bath, geom, singlet, {0.5, 1.5}, 1e-10) ==
        ProtectionClass::none);
  // A single label is trivially protected.
  const std::vector<RegisterLabel> one{RegisterLabel::parse("+-")};
  CHECK(analysis::check_dfs_general(bath, geom, one, {0.5, 1.5}, 1e-10) ==
        ProtectionClass::strong);
}

TEST_CASE("initial register validation") {
  CHECK_NOTHROW(analysis::InitialRegister::uniform_superposition(2));
  const auto uni = analysis::InitialRegister::uniform_superposition(2);
  CHECK(uni.qubits() == 2);
  CHECK(std::abs(uni.coeffs()(0, 3) - std::complex<double>(0.25, 0.0)) < 1e-14);

  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(4, 4) * 0.25;
  bad(0, 1) = std::complex<double>(0.0, 0.3);  // not Hermitian
  CHECK_THROWS_AS(analysis::InitialRegister{bad}, std::invalid_argument);

  Eigen::MatrixXcd untraced = Eigen::MatrixXcd::Identity(4, 4);  // trace 4
  CHECK_THROWS_AS(analysis::InitialRegister{untraced}, std::invalid_argument);

  Eigen::MatrixXcd negative = Eigen::MatrixXcd::Identity(4, 4) * 0.5;
  negative(3, 3) = -0.5;
  CHECK_THROWS_AS(analysis::InitialRegister{negative}, std::invalid_argument);

  Eigen::MatrixXcd odd = Eigen::MatrixXcd::Identity(3, 3) / 3.0;  // not 2^L
  CHECK_THROWS_AS(analysis::InitialRegister{odd}, std::invalid_argument);
}

TEST_CASE("broadcast report for a collective two-qubit register") {
  const auto initial = analysis::InitialRegister::uniform_superposition(2);
  const auto bath = BathSpec::uncut(5.0, 1.0 / 3.0);
  const auto rep = analysis::sbs_report(initial, bath, Geometry::collective(2), 2.0);

  REQUIRE(rep.pairs.size() == 6);  // unordered off-diagonal pairs of 4 labels
  CHECK(rep.protected_classes.size() == 3);

  int protected_count = 0;
  for (const auto& p : rep.pairs) {
    REQUIRE(p.two_qubit_class.has_value());
    if (p.protected_pair) {
      ++protected_count;
      CHECK(*p.two_qubit_class == PairClass::singlet);
      CHECK(p.abs_gamma == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(p.fidelity.at("full") == doctest::Approx(1.0).epsilon(1e-12));
    } else {
      CHECK(p.abs_gamma < 1.0);
    }
    CHECK(p.fidelity.count("full") == 1);
  }
  CHECK(protected_count == 1);

  // One coarse block: the magnetization-zero pair inside the uniform state.
  REQUIRE(rep.blocks.size() == 1);
  CHECK(rep.blocks[0].labels.size() == 2);
  CHECK(rep.blocks[0].magnetization == doctest::Approx(0.0));
  CHECK(rep.blocks[0].block.rows() == 2);
  CHECK(std::abs(rep.blocks[0].block(0, 1) - std::complex<double>(0.25, 0.0)) < 1e-14);
}

TEST_CASE("broadcast distance collapses once dephasing acts") {
  const auto initial = analysis::InitialRegister::uniform_superposition(2);
  const auto bath = BathSpec::uncut(5.0, 1.0 / 3.0);
  const auto geom = Geometry::collective(2);
  // Nothing has happened at t = 0 ...
  CHECK(analysis::sbs_report(initial, bath, geom, 0.0).sbs_distance == doctest::Approx(1.0));
  // ... and every unprotected pair is strongly suppressed soon after (the
  // distance is not monotone: the impulse at t ~ tau overshoots).
  for (double t : {1.0, 2.0, 4.0}) {
    const auto rep = analysis::sbs_report(initial, bath, geom, t);
    CHECK(rep.sbs_distance > 0.0);
    CHECK(rep.sbs_distance < 0.01);
    CHECK(rep.blocks.size() == 1);
  }
}

TEST_CASE("broadcast report without collective protection") {
  const auto initial = analysis::InitialRegister::uniform_superposition(2);
  const auto bath = BathSpec::cut(3.0, 0.5, 1.0, 2.0);
  const auto geom = Geometry::from_positions({0.0, 4.0}, 1.0);
  const auto rep = analysis::sbs_report(initial, bath, geom, 3.0);
  CHECK(rep.protected_classes.empty());
  CHECK(rep.blocks.empty());
  for (const auto& p : rep.pairs) {
    CHECK_FALSE(p.protected_pair);
    CHECK(p.fidelity.count("obs") == 1);
  }
  CHECK(rep.sbs_distance > 0.0);
  CHECK(rep.sbs_distance < 1.0);
}

TEST_CASE("broadcast report rejects mismatched sizes") {
  const auto initial = analysis::InitialRegister::uniform_superposition(2);
  const auto bath = BathSpec::uncut(3.0, 0.5);
  CHECK_THROWS_AS(analysis::sbs_report(initial, bath, Geometry::collective(3), 1.0),
                  std::invalid_argument);
}
