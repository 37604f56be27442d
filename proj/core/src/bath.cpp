#include "quasispec/bath.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "quasispec/errors.hpp"

namespace quasispec {

void BathParams::validate() const {
  if (!(kappa >= 0.0)) throw ConfigInvalid("kappa must be >= 0");
  if (!(beta > 0.0)) throw ConfigInvalid("beta must be > 0");
}

Complex XTable::at(Level a, Level b, int n) const {
  if (std::abs(n) > elements.n_range) return Complex(0.0, 0.0);
  const auto index = [&](Level l) { return l == Level::Plus ? labels.plus : labels.minus; };
  return elements.at(index(a), index(b), n);
}

XTable x_elements(const QuasienergySolution& sol, int n_range) {
  if (sol.dimension != 2) throw DimensionMismatch("X table requires d = 2");
  XTable table;
  table.labels = label_qubit_states(sol);
  table.elements = harmonic_matrix_elements(sol, {{0, pauli_z()}}, n_range);
  return table;
}

QubitQuasienergies qubit_quasienergies(const QuasienergySolution& sol) {
  const QubitLabels labels = label_qubit_states(sol);
  return {sol.states[labels.minus].quasienergy, sol.states[labels.plus].quasienergy};
}

BathWeights bath_weights(double x, const BathParams& bath) {
  BathWeights w;
  w.g = bath.kappa * x;
  if (x == 0.0) {
    w.n = std::isinf(bath.beta) ? 0.0 : bath.kappa / bath.beta;
    return w;
  }
  // (1/2) G (coth(beta x / 2) - 1) rewritten as a Bose factor, which stays
  // accurate for small |beta x| and saturates cleanly at zero temperature.
  const double bx = bath.beta * x;
  if (std::isinf(bx)) {
    w.n = bx > 0.0 ? 0.0 : -bath.kappa * x;
    return w;
  }
  w.n = bath.kappa * x / std::expm1(bx);
  return w;
}

namespace {

double dephasing_sum(const XTable& x, const QubitQuasienergies& eps, const BathParams& bath,
                     double omega) {
  double sum = 0.0;
  for (int n = -x.n_range(); n <= x.n_range(); ++n) {
    const double transverse = std::norm(x.at(Level::Minus, Level::Plus, n));
    const double longitudinal = std::norm(x.at(Level::Minus, Level::Minus, n));
    if (transverse > 0.0) {
      const BathWeights w = bath_weights(eps.minus - eps.plus + n * omega, bath);
      sum += (2.0 * w.n + w.g) * transverse;
    }
    if (longitudinal > 0.0) sum += 4.0 * bath_weights(n * omega, bath).n * longitudinal;
  }
  return sum;
}

}  // namespace

RateSet gamma_and_populations(const XTable& x, const QubitQuasienergies& eps,
                              const BathParams& bath, double omega) {
  bath.validate();
  double up = 0.0;
  double down = 0.0;
  for (int n = -x.n_range(); n <= x.n_range(); ++n) {
    const double transverse = std::norm(x.at(Level::Minus, Level::Plus, n));
    if (transverse > 0.0) {
      const BathWeights w = bath_weights(eps.minus - eps.plus + n * omega, bath);
      up += w.n * transverse;
      down += (2.0 * w.n + w.g) * transverse;
    }
  }
  if (!(down > 0.0)) {
    throw ZeroDenominator("population denominator vanishes (no bath or no transverse coupling)");
  }
  RateSet rates;
  rates.gamma = std::numbers::pi * dephasing_sum(x, eps, bath, omega);
  rates.p_minus = up / down;
  rates.p_plus = 1.0 - rates.p_minus;
  rates.x_table = x;
  return rates;
}

RateSet qubit_rates(const QubitParams& p, const BathParams& bath, double tol) {
  const AtomicHamiltonian h = qubit_hamiltonian(p.eps0, p.delta, p.amp);
  const QuasienergySolution sol =
      solve_quasienergies(h, 1.0, TruncationSpec::automatic(h, 1.0, tol));
  return gamma_and_populations(x_elements(sol), qubit_quasienergies(sol), bath);
}

QubitParams resonant_reference(double delta) {
  if (!(delta >= 0.0)) throw ConfigInvalid("delta must be >= 0");
  if (delta >= 1.0) return {0.0, delta, 0.0};
  return {std::sqrt(1.0 - delta * delta), delta, 0.0};
}

double calibrate_kappa(double target_gamma, const QubitParams& reference, double beta) {
  if (!(target_gamma > 0.0)) throw ConfigInvalid("target gamma must be > 0");
  // Only the dephasing rate is needed here, so a reference without
  // transverse coupling (undefined populations) is still usable.
  const BathParams unit_bath{1.0, beta};
  unit_bath.validate();
  const AtomicHamiltonian h = qubit_hamiltonian(reference.eps0, reference.delta, reference.amp);
  const QuasienergySolution sol = solve_quasienergies(h, 1.0, TruncationSpec::automatic(h, 1.0));
  const double gamma = std::numbers::pi * dephasing_sum(x_elements(sol), qubit_quasienergies(sol),
                                                        unit_bath, 1.0);
  if (!(gamma > 0.0)) {
    throw ZeroReferenceGamma("gamma at kappa = 1 is zero at the reference point");
  }
  return target_gamma / gamma;
}

}  // namespace quasispec
