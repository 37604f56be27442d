#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>

#include "quasispec/errors.hpp"
#include "quasispec/probe.hpp"

using namespace quasispec;

namespace {

QuasienergySolution converged(double eps0, double delta, double amp) {
  const AtomicHamiltonian h = qubit_hamiltonian(eps0, delta, amp);
  return solve_quasienergies(h, 1.0, TruncationSpec::automatic(h, 1.0, 1e-12));
}

}  // namespace

TEST_SUITE("probe") {
  TEST_CASE("longitudinal probe alone drives no transitions") {
    const auto sol = converged(0.6, 0.0, 0.0);
    const HarmonicElements f = probe_matrix_elements(sol, ProbeSpec{});
    for (int n = -f.n_range; n <= f.n_range; ++n) {
      CHECK(std::abs(f.at(0, 1, n)) < 1e-14);
      CHECK(std::abs(f.at(1, 0, n)) < 1e-14);
    }
    CHECK(std::abs(std::abs(f.at(0, 0, 0)) - 1.0) < 1e-14);
  }

  TEST_CASE("transition strength vanishes at a Bessel root") {
    const double root = boost::math::cyl_bessel_j_zero(1.0, 1);
    // Small delta, where higher-order couplings through other sidebands are negligible.
    const auto sol = converged(1.05, 0.1, root);
    CHECK(resonant_transition_strength(sol, ProbeSpec{}, quasienergy_gap(sol)) < 1e-4);
    const auto away = converged(1.05, 0.1, 1.8);
    CHECK(resonant_transition_strength(away, ProbeSpec{}, quasienergy_gap(away)) > 0.1);
  }

  TEST_CASE("single resonant pair peak value") {
    HarmonicElements f;
    f.n_range = 0;
    f.by_harmonic = {CMatrix::Zero(2, 2)};
    f.by_harmonic[0](1, 0) = 0.5;
    f.by_harmonic[0](0, 1) = 0.5;
    ProbeSpec probe;
    probe.amp_p = 0.3;
    probe.omega_p = 0.25;
    const double gamma = 0.01;
    const double rate = golden_rule_rate(f, {0.1, 0.35}, {0.7, 0.3}, gamma, probe);
    CHECK(rate == doctest::Approx(0.09 * 0.7 * 0.25 * 4.0 / gamma).epsilon(1e-12));
    // Emission terms do not enter.
    const double none = golden_rule_rate(f, {0.35, 0.1}, {1.0, 0.0}, gamma, probe);
    CHECK(none == 0.0);
  }

  TEST_CASE("empty sum gives zero") {
    HarmonicElements f;
    f.n_range = 0;
    f.by_harmonic = {CMatrix::Zero(2, 2)};
    CHECK(golden_rule_rate(f, {0.1, 0.4}, {0.5, 0.5}, 0.01, ProbeSpec{}) == 0.0);
  }

  TEST_CASE("isolated resonance matches the closed-form peak") {
    const auto sol = converged(1.05, 0.37, 2.0);
    const RateSet rates = qubit_rates({1.05, 0.37, 2.0}, {1e-4, 2.24}, 1e-12);
    const HarmonicElements f = probe_matrix_elements(sol, ProbeSpec{});
    const auto eps = sol.quasienergies();
    const std::vector<double> pops = rates.x_table.labels.minus == 0
                                         ? std::vector<double>{rates.p_minus, rates.p_plus}
                                         : std::vector<double>{rates.p_plus, rates.p_minus};
    // Strongest absorptive pair.
    double best = 0.0, w_best = 0.0, p_best = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t fi = 0; fi < 2; ++fi) {
        if (fi == i) continue;
        for (int n = -f.n_range; n <= f.n_range; ++n) {
          const double w = eps[fi] - eps[i] + n;
          if (w > 0 && std::norm(f.at(fi, i, n)) * pops[i] > best) {
            best = std::norm(f.at(fi, i, n)) * pops[i];
            w_best = w;
            p_best = pops[i];
          }
        }
      }
    }
    (void)p_best;
    ProbeSpec probe;
    probe.omega_p = w_best;
    const double rate = golden_rule_rate(sol, rates, probe);
    CHECK(rates.gamma < 0.01);
    CHECK(rate == doctest::Approx(best * 4.0 / rates.gamma).epsilon(0.05));
  }

  TEST_CASE("absorption is non-negative and symmetric") {
    const double kappa = calibrate_kappa(0.016, resonant_reference(0.37), 2.24);
    ProbeSpec probe;
    probe.omega_p = 0.092;
    for (double e : {0.4, 1.05, 2.6}) {
      for (double a : {0.7, 3.1}) {
        const auto p = qubit_absorption({e, 0.37, a}, {kappa, 2.24}, probe, 1e-12);
        const auto m = qubit_absorption({-e, 0.37, a}, {kappa, 2.24}, probe, 1e-12);
        CHECK(p.rate >= 0.0);
        CHECK(m.rate == doctest::Approx(p.rate).epsilon(1e-6));
      }
    }
  }

  TEST_CASE("resonance condition branches") {
    const auto low = resonance_condition(0.092, 1.0, 0.092);
    CHECK(low.k == 0);
    CHECK(low.branch == ResonanceBranch::Lower);
    CHECK(resonance_condition(0.908, 1.0, 0.092).branch == ResonanceBranch::Upper);
    CHECK(resonance_condition(0.5, 1.0, 0.5).branch == ResonanceBranch::Both);
    const auto high = resonance_condition(0.3, 1.0, 1.3);
    CHECK(high.k == 1);
    CHECK(high.lower_branch == doctest::Approx(0.3));
    CHECK(high.upper_branch == doctest::Approx(0.7));
    CHECK(resonance_condition(0.2, 1.0, 0.092).branch == ResonanceBranch::None);
    CHECK_THROWS_AS(resonance_condition(0.2, 1.0, 0.0), NonPositiveFrequency);
  }

  TEST_CASE("gap contour lookup") {
    const auto eps0 = gap_contour_eps0({0.0, 0.37, 2.5}, 0.092, 3.0, 3.5);
    REQUIRE(eps0.has_value());
    const AtomicHamiltonian h = qubit_hamiltonian(*eps0, 0.37, 2.5);
    const auto sol = solve_quasienergies(h, 1.0, TruncationSpec::automatic(h, 1.0, 1e-12));
    CHECK(quasienergy_gap(sol) == doctest::Approx(0.092).epsilon(1e-8));
    CHECK_FALSE(gap_contour_eps0({0.0, 0.37, 2.5}, 0.092, 3.3, 3.5).has_value());
  }

  TEST_CASE("probe validation") {
    ProbeSpec p;
    p.omega_p = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigInvalid);
  }
}
