#pragma once

// Floquet-Born-Markov steady state of the driven qubit coupled through sz to
// an Ohmic bath: sz matrix elements between quasienergy states, bath weight
// functions, the dephasing rate and the quasienergy-state populations.

#include "quasispec/analytic_qubit.hpp"
#include "quasispec/floquet.hpp"

namespace quasispec {

struct BathParams {
  double kappa = 0.0;  // dimensionless Ohmic coupling, >= 0
  double beta = 1.0;   // hw / kT, > 0 (infinity means zero temperature)

  /// Throws ConfigInvalid on kappa < 0 or beta <= 0.
  void validate() const;
};

enum class Level { Minus = 0, Plus = 1 };

/// X_{ab n} = sum_k <c_a^(k)| sz |c_b^(k+n)> for a, b in {-, +}.
struct XTable {
  HarmonicElements elements;
  QubitLabels labels;

  int n_range() const { return elements.n_range; }
  Complex at(Level a, Level b, int n) const;
};

struct QubitQuasienergies {
  double minus = 0.0;
  double plus = 0.0;
};

struct RateSet {
  double gamma = 0.0;    // dephasing rate in units of omega
  double p_minus = 0.5;  // population of the minus state
  double p_plus = 0.5;   // exactly 1 - p_minus
  XTable x_table;
};

/// sz table of a two-level solution. n_range < 0 selects the full stored
/// range. Throws DimensionMismatch for d != 2 and TailNotConverged when the
/// edge elements exceed 1e-10.
XTable x_elements(const QuasienergySolution& sol, int n_range = -1);

/// Folded quasienergies of the labeled qubit states.
QubitQuasienergies qubit_quasienergies(const QuasienergySolution& sol);

struct BathWeights {
  double g = 0.0;  // Ohmic density kappa x
  double n = 0.0;  // thermal weight kappa x / (exp(beta x) - 1), limit kappa / beta at x = 0
};

/// Weights at energy argument x (units of hw). N >= 0 for every real x.
BathWeights bath_weights(double x, const BathParams& bath);

/// gamma = pi sum_n [(2N + G)|X_{-+n}|^2 + 4 N |X_{--n}|^2] and
/// p_- = sum_n N |X_{-+n}|^2 / sum_n (2N + G)|X_{-+n}|^2, with the (-+n)
/// weights taken at eps_- - eps_+ + n omega and the (--n) ones at n omega.
/// Throws ZeroDenominator when the population denominator vanishes.
RateSet gamma_and_populations(const XTable& x, const QubitQuasienergies& eps,
                              const BathParams& bath, double omega = 1.0);

/// Solve + X table + rates for the qubit at p with drive frequency hw = 1.
RateSet qubit_rates(const QubitParams& p, const BathParams& bath,
                    double tol = 1e-10);

/// Undriven, zero-detuning reference point: A = 0 and eps0 = sqrt(1 - delta^2)
/// so that hw0 = hw. When delta >= hw no eps0 reaches zero detuning and the
/// closest point eps0 = 0 is returned instead. Throws ConfigInvalid for
/// negative delta.
QubitParams resonant_reference(double delta);

/// kappa such that the reference point has dephasing rate target_gamma.
/// gamma is linear in kappa, so one evaluation at kappa = 1 suffices.
/// Throws ZeroReferenceGamma when that evaluation gives zero.
double calibrate_kappa(double target_gamma, const QubitParams& reference, double beta);

}  // namespace quasispec
