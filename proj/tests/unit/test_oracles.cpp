#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quasispec/bath.hpp"
#include "quasispec/errors.hpp"
#include "quasispec/lindblad.hpp"
#include "quasispec/monodromy.hpp"

using namespace quasispec;

TEST_SUITE("oracles") {
  TEST_CASE("undriven propagator is analytic") {
    const double w0 = std::hypot(0.8, 0.37);
    auto q = monodromy_quasienergies(qubit_hamiltonian(0.8, 0.37, 0.0), 1.0);
    std::vector<double> expected{fold_to_zone(w0 / 2, 1.0), fold_to_zone(-w0 / 2, 1.0)};
    CHECK(max_quasienergy_mismatch(q, expected, 1.0) < 1e-11);
  }

  TEST_CASE("propagator stays unitary") {
    const auto r = monodromy_propagator(qubit_hamiltonian(1.05, 0.37, 5.6), 1.0);
    CHECK(r.unitarity_error < 1e-10);
    CHECK(r.determinant_error < 1e-10);
  }

  TEST_CASE("integrator tolerance is range checked") {
    CHECK_THROWS_AS(monodromy_propagator(qubit_hamiltonian(1.0, 0.3, 1.0), 1.0, 1e-3), ConfigInvalid);
  }

  TEST_CASE("undriven master-equation line sits at the static splitting") {
    const QubitParams p{0.6, 0.37, 0.0};
    LindbladSpec spec;
    spec.t1 = 2000.0;
    spec.t2 = 1000.0;
    std::vector<double> grid;
    for (int i = 0; i <= 400; ++i) grid.push_back(0.6 + 0.2 * i / 400.0);
    const auto s = lindblad_sigma_z_spectrum(p, grid, spec);
    const auto peak = std::max_element(s.values.begin(), s.values.end()) - s.values.begin();
    CHECK(grid[static_cast<std::size_t>(peak)] == doctest::Approx(p.omega0()).epsilon(1e-3));
    CHECK(s.max_trace_error < 1e-10);
    CHECK(s.min_eigenvalue > -1e-9);
    CHECK(s.periodicity_residual < 1e-8);
  }

  TEST_CASE("undriven line weight follows the thermal lower-level population") {
    const QubitParams p{0.6, 0.37, 0.0};
    const double beta = 2.24, gamma = 0.01;
    LindbladSpec spec;
    spec.t2 = 1.0 / gamma;
    spec.t1 = 2.0 / gamma;
    spec.beta = beta;
    spec.amp_p = 1.0;
    const double w0 = p.omega0();
    std::vector<double> grid;
    const double half = 60 * gamma;
    const int n = 1200;
    for (int i = 0; i <= n; ++i) grid.push_back(w0 - half + 2 * half * i / n);
    const auto s = lindblad_sigma_z_spectrum(p, grid, spec);
    double area = 0.0;
    for (int i = 0; i < n; ++i) area += 0.5 * (s.values[i] + s.values[i + 1]) * (grid[i + 1] - grid[i]);
    const RateSet rates = qubit_rates(p, {0.01, beta}, 1e-12);
    // eps0 > 0: the minus state is the lower level.
    const double x2 = std::pow(p.delta / w0, 2);
    const double expected = (1.0 / 16.0) * 2 * std::numbers::pi * rates.p_minus * x2;
    CHECK(area == doctest::Approx(expected).epsilon(0.1));
  }

  TEST_CASE("spectrum is stable under a longer horizon") {
    const QubitParams p{1.05, 0.37, 3.27};
    LindbladSpec spec;
    spec.t2 = 1.0 / 0.016;
    spec.t1 = 2.0 / 0.016;
    spec.beta = 2.24;
    std::vector<double> grid;
    for (int i = 0; i <= 200; ++i) grid.push_back(0.01 + 0.3 * i / 200.0);
    auto total = [&](double horizon) {
      spec.horizon = horizon;
      const auto s = lindblad_sigma_z_spectrum(p, grid, spec);
      double sum = 0.0;
      for (double v : s.values) sum += v;
      return sum;
    };
    const double h = 30 * spec.t1;
    CHECK(total(2 * h) == doctest::Approx(total(h)).epsilon(0.01));
  }

  TEST_CASE("horizon must resolve the line") {
    LindbladSpec spec;
    spec.t1 = 200.0;
    spec.t2 = 100.0;
    spec.horizon = 500.0;
    CHECK_THROWS_AS(spec.validate(), HorizonTooShort);
    spec.t2 = 500.0;
    spec.horizon = 0.0;
    CHECK_THROWS_AS(spec.validate(), ConfigInvalid);
  }
}
