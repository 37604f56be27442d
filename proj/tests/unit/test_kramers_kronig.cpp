#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "quasispec/errors.hpp"
#include "quasispec/kramers_kronig.hpp"

using namespace quasispec;

namespace {

struct Lorentzian {
  std::vector<double> grid, absorption, dispersion;
};

// gamma / ((w - w0)^2 + gamma^2 / 4) and its Hilbert partner.
Lorentzian lorentzian(int n, double w0, double gamma) {
  Lorentzian l;
  for (int i = 0; i < n; ++i) {
    const double w = -2.0 + 4.0 * i / (n - 1);
    const double den = (w - w0) * (w - w0) + gamma * gamma / 4;
    l.grid.push_back(w);
    l.absorption.push_back(gamma / den);
    l.dispersion.push_back(2.0 * (w0 - w) / den);
  }
  return l;
}

double rms_relative(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0, n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    e += (a[i] - b[i]) * (a[i] - b[i]);
    n += b[i] * b[i];
  }
  return std::sqrt(e / n);
}

// RMS error as a fraction of the reference peak magnitude.
double rms_of_peak(const std::vector<double>& a, const std::vector<double>& b) {
  double e = 0, peak = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    e += (a[i] - b[i]) * (a[i] - b[i]);
    peak = std::max(peak, std::abs(b[i]));
  }
  return std::sqrt(e / a.size()) / peak;
}

}  // namespace

TEST_SUITE("kramers_kronig") {
  TEST_CASE("Lorentzian pair") {
    const auto l = lorentzian(4001, 0.3, 0.02);
    CHECK(rms_relative(kramers_kronig(l.grid, l.absorption), l.dispersion) < 0.02);
  }

  TEST_CASE("zero input") {
    const auto l = lorentzian(256, 0.0, 0.02);
    const auto out = kramers_kronig(l.grid, std::vector<double>(l.grid.size(), 0.0));
    for (double v : out) CHECK(v == 0.0);
  }

  TEST_CASE("double transform negates") {
    const auto l = lorentzian(4001, 0.1, 0.02);
    const auto twice = hilbert_transform(hilbert_transform(l.absorption));
    std::vector<double> negated;
    for (double v : l.absorption) negated.push_back(-v);
    CHECK(rms_of_peak(twice, negated) < 0.02);
    INFO("norm-relative error " << rms_relative(twice, negated));
  }

  TEST_CASE("preconditions") {
    const auto coarse = lorentzian(100, 0.0, 0.5);
    CHECK_THROWS_AS(kramers_kronig(coarse.grid, coarse.absorption), GridTooCoarse);
    const auto wide = lorentzian(1000, 0.0, 3.0);
    CHECK_THROWS_AS(kramers_kronig(wide.grid, wide.absorption), TailsNotDecayed);
    auto uneven = lorentzian(1000, 0.0, 0.02);
    uneven.grid[10] += 1e-4;
    CHECK_THROWS_AS(kramers_kronig(uneven.grid, uneven.absorption), ConfigInvalid);
  }
}

#include "quasispec/probe.hpp"

TEST_CASE("dispersion of a golden-rule line crosses zero at its peak" * doctest::test_suite("kramers_kronig")) {
  const QubitParams p{1.05, 0.37, 3.27};
  const double kappa = calibrate_kappa(0.016, resonant_reference(0.37), 2.24);
  const AtomicHamiltonian h = qubit_hamiltonian(p.eps0, p.delta, p.amp);
  const auto sol = solve_quasienergies(h, 1.0, TruncationSpec::automatic(h, 1.0, 1e-12));
  const RateSet rates = gamma_and_populations(x_elements(sol), qubit_quasienergies(sol), {kappa, 2.24});
  const HarmonicElements f = probe_matrix_elements(sol, ProbeSpec{});
  const auto eps = sol.quasienergies();
  const std::vector<double> pops = rates.x_table.labels.minus == 0
                                       ? std::vector<double>{rates.p_minus, rates.p_plus}
                                       : std::vector<double>{rates.p_plus, rates.p_minus};
  std::vector<double> grid;
  for (int i = 0; i < 2048; ++i) grid.push_back(-0.5 + i / 2047.0);
  const auto absorption = golden_rule_spectrum(f, eps, pops, rates.gamma, ProbeSpec{}, grid);
  const auto dispersion = kramers_kronig(grid, absorption);
  std::size_t peak = 0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (absorption[i] > absorption[peak]) peak = i;
  }
  REQUIRE(grid[peak] > 0.0);
  bool crossing = false;
  for (std::size_t i = peak - 1; i <= peak + 1; ++i) {
    if ((dispersion[i] >= 0.0) != (dispersion[i + 1] >= 0.0)) crossing = true;
  }
  CHECK(crossing);
}
