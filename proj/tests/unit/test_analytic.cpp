#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>

#include "quasispec/analytic_qubit.hpp"
#include "quasispec/bessel.hpp"
#include "quasispec/errors.hpp"
#include "quasispec/floquet.hpp"

using namespace quasispec;

namespace {

double numeric_gap(double eps0, double delta, double amp) {
  const AtomicHamiltonian h = qubit_hamiltonian(eps0, delta, amp);
  return quasienergy_gap(solve_quasienergies(h, 1.0, TruncationSpec::automatic(h, 1.0, 1e-12)));
}

const double kJ1Root = boost::math::cyl_bessel_j_zero(1.0, 1);

}  // namespace

TEST_SUITE("analytic") {
  TEST_CASE("Bessel values against an independent implementation") {
    for (int n = -64; n <= 64; n += 7) {
      for (double x : {0.0, 0.01, 1.0, 3.8317, 10.0, 33.3, 64.0}) {
        CHECK(std::abs(bessel_j(n, x) - boost::math::cyl_bessel_j(n, x)) < 1e-12);
      }
    }
    CHECK(bessel_j(3, -2.0) == doctest::Approx(-boost::math::cyl_bessel_j(3, 2.0)));
  }

  TEST_CASE("RWA gap limits") {
    CHECK(rwa_quasienergy_gap({0.8, 0.37, 0.0}, 0) == doctest::Approx(std::hypot(0.8, 0.37)));
    CHECK(rwa_quasienergy_gap({1.3, 0.37, kJ1Root}, 1) == doctest::Approx(0.3).epsilon(1e-12));
  }

  TEST_CASE("RWA gap is bounded below by the coupling") {
    for (double e : {0.0, 0.7, 1.0, 2.5}) {
      for (double a : {0.3, 2.0, 4.4}) {
        for (int n = 0; n <= 3; ++n) {
          const double coupling = 0.37 * std::abs(bessel_j(n, a));
          const double gap = rwa_quasienergy_gap({e, 0.37, a}, n);
          CHECK(gap >= coupling - 1e-15);
          if (e == n) CHECK(gap == doctest::Approx(coupling));
          else CHECK(gap > coupling);
        }
      }
    }
  }

  TEST_CASE("diabatic shift limits") {
    CHECK(delta_shift_diabatic({0.8, 0.37, 0.0}, 1) == doctest::Approx(0.37 * 0.37 / 1.6));
    CHECK(delta_shift_diabatic({0.8, 0.0, 2.0}, 1) == 0.0);
    CHECK(corrected_quasienergy_gap({0.8, 0.0, 2.0}, 1) == doctest::Approx(0.2));
    const double e = 1.3, d = 0.2;
    CHECK(corrected_quasienergy_gap({e, d, 0.0}, 1) ==
          doctest::Approx(std::abs(e + d * d / (2 * e) - 1.0)));
  }

  TEST_CASE("shift rejects retained poles") {
    CHECK_THROWS_AS(delta_shift_diabatic({2.0, 0.37, 1.0}, 1), NearPole);
  }

  TEST_CASE("corrected gap tracks numerics better than the bare RWA") {
    const QubitParams p{1.0, 0.37, 1.0};
    const double numeric = numeric_gap(p.eps0, p.delta, p.amp);
    CHECK(std::abs(corrected_quasienergy_gap(p, 1) - numeric) <
          std::abs(rwa_quasienergy_gap(p, 1) - numeric));
  }

  TEST_CASE("second-order correction scales as Delta^2 off resonance") {
    auto diff = [](double d) {
      const QubitParams p{1.3, d, 1.7};
      return std::abs(corrected_quasienergy_gap(p, 1) - rwa_quasienergy_gap(p, 1));
    };
    CHECK(diff(0.02) / diff(0.01) == doctest::Approx(4.0).epsilon(0.02));
  }

  TEST_CASE("adiabatic parameters") {
    const AdiabaticParams a = adiabatic_params({1.5, 0.0, 1.0}, 1);
    CHECK(a.diagonal_energy == doctest::Approx(1.5));
    CHECK(a.coupling == 0.0);
    CHECK_THROWS_AS(adiabatic_params({0.0, 0.37, 1.0}, 1), DegenerateDiabatic);
    // At a resonance n = eps0 with delta << eps0 both bases give the same coupling.
    const QubitParams far{12.0, 0.37, 10.0};
    const double diabatic = 0.5 * far.delta * bessel_j(12, far.amp);
    CHECK(adiabatic_params(far, 12).coupling / diabatic == doctest::Approx(1.0).epsilon(1e-2));
  }

  TEST_CASE("adiabatic gap tracks numerics below the diabatic crossing") {
    const QubitParams p{2.0, 0.37, 1.0};
    // Near an even resonance the folded gap is reported as hw minus the splitting.
    const double analytic = adiabatic_corrected_gap(p, 2);
    const double numeric = numeric_gap(2.0, 0.37, 1.0);
    CHECK(std::min(std::abs(analytic - numeric), std::abs(analytic - (1.0 - numeric))) < 0.01);
  }

  TEST_CASE("Landau-Zener probability") {
    CHECK(lz_probability({0.5, 0.0, 2.0}).value() == doctest::Approx(1.0));
    CHECK_FALSE(lz_probability({1.0, 0.37, 1.0}).has_value());
    CHECK_FALSE(lz_probability({1.0, 0.37, 0.5}).has_value());
    const double expected = std::exp(-2 * std::numbers::pi * 0.37 * 0.37 / (4 * 2.0));
    CHECK(lz_probability({0.0, 0.37, 2.0}).value() == doctest::Approx(expected));
    CHECK(expected == doctest::Approx(0.8981).epsilon(1e-4));
  }

  TEST_CASE("basis choice") {
    CHECK(choose_basis({1.0, 0.37, 0.5}) == Basis::Adiabatic);
    CHECK(choose_basis({1.0, 0.37, 2.0}) == Basis::Diabatic);
    CHECK(choose_basis({1.0, 0.37, 1.0}) == Basis::Diabatic);
  }

  TEST_CASE("RWA transition amplitude") {
    CHECK(rwa_transition_amplitude({2.0, 0.37, 1.4}, 2) == doctest::Approx(1.0));
    CHECK(rwa_transition_amplitude({1.3, 0.37, kJ1Root}, 1) < 1e-28);
    for (double e : {0.4, 1.1, 2.9}) {
      const double f = rwa_transition_amplitude({e, 0.37, 2.2}, 1);
      CHECK(f >= 0.0);
      CHECK(f <= 1.0);
    }
    CHECK_THROWS_AS(rwa_transition_amplitude({1.0, 0.0, 1.0}, 1), DegenerateGap);
  }

  TEST_CASE("negative inputs are rejected") {
    CHECK_THROWS_AS(rwa_quasienergy_gap({1.0, -0.1, 1.0}, 1), ConfigInvalid);
    CHECK_THROWS_AS(rwa_quasienergy_gap({1.0, 0.1, -1.0}, 1), ConfigInvalid);
  }
}
