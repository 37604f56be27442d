#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "quasispec/bessel.hpp"
#include "quasispec/errors.hpp"
#include "quasispec/two_mode.hpp"

using namespace quasispec;

namespace {

std::vector<double> lattice(const QuasienergySolution& sol, double omega_p, int n2) {
  std::vector<double> out;
  for (const auto& s : sol.states) {
    for (int m = -n2; m <= n2; ++m) out.push_back(fold_to_zone(s.quasienergy + m * omega_p + 0.5, 1.0) - 0.5);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TwoModeTruncation trunc(int n1, int n2) {
  TwoModeTruncation t;
  t.n1_cutoff = n1;
  t.n2_cutoff = n2;
  return t;
}

}  // namespace

TEST_SUITE("two_mode") {
  TEST_CASE("zero probe reduces to the single-mode lattice") {
    const AtomicHamiltonian h = qubit_hamiltonian(2.08, 0.37, 5.6);
    const auto two = solve_two_mode(h, 1.0, qubit_probe_coupling(0.0, 0.1), trunc(30, 4)).levels;
    const auto single = solve_quasienergies(h, 1.0, TruncationSpec::automatic(h, 1.0, 1e-13));
    const auto expected = lattice(single, 0.1, 4);
    REQUIRE(two.size() == expected.size());
    for (std::size_t i = 0; i < two.size(); ++i) CHECK(std::abs(two[i] - expected[i]) < 1e-10);
  }

  TEST_CASE("dense two-mode matrix is Hermitian and matches the banded solve") {
    const AtomicHamiltonian h = qubit_hamiltonian(1.2, 0.37, 2.0);
    const auto t = trunc(12, 3);
    const CMatrix m = build_two_mode_matrix(h, 1.0, qubit_probe_coupling(0.2, 0.13), t);
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    const Eigen::VectorXd dense = Eigen::SelfAdjointEigenSolver<CMatrix>(m).eigenvalues();
    const auto banded = solve_two_mode(h, 1.0, qubit_probe_coupling(0.2, 0.13), t, -0.5, 0.5).levels;
    std::vector<double> window;
    for (Eigen::Index i = 0; i < dense.size(); ++i) {
      if (dense(i) >= -0.5 && dense(i) < 0.5) window.push_back(dense(i));
    }
    REQUIRE(window.size() == banded.size());
    for (std::size_t i = 0; i < window.size(); ++i) CHECK(std::abs(window[i] - banded[i]) < 1e-10);
  }

  TEST_CASE("exchanging drive and probe leaves the spectrum unchanged") {
    const double eps0 = 0.9, delta = 0.37, amp = 1.5, amp_p = 0.3, omega_p = 0.37;
    const CMatrix a = build_two_mode_matrix(qubit_hamiltonian(eps0, delta, amp), 1.0,
                                            qubit_probe_coupling(amp_p, omega_p), trunc(8, 5));
    ProbeCoupling swapped;
    swapped.omega_p = 1.0;
    swapped.blocks = qubit_probe_coupling(amp, 1.0).blocks;
    const CMatrix b = build_two_mode_matrix(qubit_hamiltonian(eps0, delta, amp_p), omega_p,
                                            swapped, trunc(5, 8));
    const Eigen::VectorXd ea = Eigen::SelfAdjointEigenSolver<CMatrix>(a).eigenvalues();
    const Eigen::VectorXd eb = Eigen::SelfAdjointEigenSolver<CMatrix>(b).eigenvalues();
    REQUIRE(ea.size() == eb.size());
    CHECK((ea - eb).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("probe opens the single-photon anti-crossing linearly") {
    AnticrossingScan scan;
    scan.eps0_lo = 2.0;
    scan.eps0_hi = 2.16;
    const auto t = trunc(23, 4);
    const QubitParams p{0.0, 0.37, 5.6};
    const AntiCrossing closed = measure_anticrossing(p, 0.0, 0.1, scan, t);
    const AntiCrossing g1 = measure_anticrossing(p, 0.01, 0.1, scan, t);
    const AntiCrossing g2 = measure_anticrossing(p, 0.02, 0.1, scan, t);
    CHECK(closed.gap < 1e-6);
    CHECK(g1.gap > 1e-3);
    CHECK(g2.gap / g1.gap == doctest::Approx(2.0).epsilon(0.05));
    CHECK(g1.location == doctest::Approx(2.08).epsilon(0.01));
  }

  TEST_CASE("single-photon gap follows the probe Bessel dressing") {
    // The longitudinal probe dresses the coupling with J_1(A_P / omega_P),
    // so the single-photon gap shrinks again near its first root.
    AnticrossingScan scan;
    scan.eps0_lo = 2.0;
    scan.eps0_hi = 2.16;
    const auto t = trunc(23, 4);
    const QubitParams p{0.0, 0.37, 5.6};
    const double g1 = measure_anticrossing(p, 0.1, 0.1, scan, t).gap;
    const double g2 = measure_anticrossing(p, 0.2, 0.1, scan, t).gap;
    CHECK(g2 / g1 == doctest::Approx(std::abs(bessel_j(1, 2.0) / bessel_j(1, 1.0))).epsilon(0.05));
  }

  TEST_CASE("no bracket at the interval ends") {
    AnticrossingScan scan;
    scan.eps0_lo = 2.2;
    scan.eps0_hi = 2.25;
    scan.probe_photons = 1;
    CHECK_THROWS_AS(measure_anticrossing({0.0, 0.37, 5.6}, 0.05, 0.1, scan, trunc(23, 4)), NoBracket);
  }

  TEST_CASE("rank ceiling") {
    TwoModeTruncation t = trunc(400, 8);
    CHECK_THROWS_AS(t.validate(2), MemoryCeiling);
  }
}
