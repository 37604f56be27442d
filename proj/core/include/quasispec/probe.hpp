#pragma once

// Weak-probe absorption between quasienergy states. The probe couples as
// A_P cos(omega_P t) F_S(t) with a drive-periodic operator F_S; to first order
// in A_P the absorption rate is a sum of Lorentzians centred on the Sambe
// transition energies eps_f - eps_i + n omega.

#include <map>
#include <optional>
#include <vector>

#include "quasispec/analytic_qubit.hpp"
#include "quasispec/bath.hpp"
#include "quasispec/floquet.hpp"

namespace quasispec {

struct ProbeSpec {
  double amp_p = 1.0;    // probe amplitude in units of hw; enters as |A_P|^2
  double omega_p = 0.1;  // probe frequency in units of omega, > 0
  std::map<int, CMatrix> f_s_blocks{{0, pauli_z()}};

  /// Throws ConfigInvalid on omega_p <= 0 or a non-Hermitian block set.
  void validate() const;
};

/// F_{pq n} between all pairs of stored quasienergy states (see
/// harmonic_matrix_elements). zone_span < 0 covers the full stored range.
HarmonicElements probe_matrix_elements(const QuasienergySolution& sol,
                                       const ProbeSpec& probe, int zone_span = -1);

/// Golden-rule rate
///     P = |A_P|^2 sum_{i, f, n; w > 0} p_i gamma |F_{fi n}|^2 / ((w - omega_P)^2 + gamma^2/4)
/// with w = eps_f - eps_i + n omega. Only absorptive terms (w > 0) enter.
double golden_rule_rate(const HarmonicElements& f, const std::vector<double>& quasienergies,
                        const std::vector<double>& populations, double gamma,
                        const ProbeSpec& probe, double omega = 1.0);

/// Same sum evaluated on a list of probe frequencies (amp_p and f_s_blocks
/// from `probe`, its omega_p ignored).
std::vector<double> golden_rule_spectrum(const HarmonicElements& f,
                                         const std::vector<double>& quasienergies,
                                         const std::vector<double>& populations,
                                         double gamma, const ProbeSpec& probe,
                                         const std::vector<double>& omega_p_grid,
                                         double omega = 1.0);

/// Qubit convenience form: populations and gamma from a RateSet.
double golden_rule_rate(const QuasienergySolution& sol, const RateSet& rates,
                        const ProbeSpec& probe);

struct QubitAbsorption {
  double rate = 0.0;  // P in units of |A_P|^2 / omega
  double gap = 0.0;   // folded quasienergy splitting
  RateSet rates;
  int photon_cutoff = 0;
};

/// Full pipeline for one (eps0, A) point of the driven qubit with hw = 1.
QubitAbsorption qubit_absorption(const QubitParams& p, const BathParams& bath,
                                 const ProbeSpec& probe, double tol = 1e-10);

/// |F_{fi n}|^2 of the transition (f != i) whose frequency eps_f - eps_i + n omega
/// lies closest to `frequency`; the numerical counterpart of the RWA amplitude.
double resonant_transition_strength(const QuasienergySolution& sol, const ProbeSpec& probe,
                                    double frequency);

/// eps0 in [eps_lo, eps_hi] where the numerical gap of the qubit (delta, amp
/// from `p`) equals `level`, or std::nullopt when the interval does not
/// bracket a crossing. The gap follows quasienergy_gap, so near even
/// resonances it lies close to hw rather than 0. Solved by bracketing root
/// search to `tol`.
std::optional<double> gap_contour_eps0(const QubitParams& p, double level, double eps_lo,
                                       double eps_hi, double tol = 1e-10);

enum class ResonanceBranch { None, Lower, Upper, Both };

struct ResonanceMatch {
  int k = 0;                  // floor(omega_P / omega)
  double lower_branch = 0.0;  // omega_P - k omega
  double upper_branch = 0.0;  // (k + 1) omega - omega_P
  ResonanceBranch branch = ResonanceBranch::None;
};

/// Which of gap = omega_P - k omega or gap = (k+1) omega - omega_P holds
/// within `tol`. Throws NonPositiveFrequency when omega or omega_P <= 0.
ResonanceMatch resonance_condition(double gap, double omega, double omega_p,
                                   double tol = 1e-9);

}  // namespace quasispec
