#pragma once

// Closed-form approximations for the longitudinally driven qubit
//     H(t) = (eps0 sz + delta sx)/2 + (amp/2) cos(w t) sz,
// all energies in units of hw. Resonance index n pairs the diabatic states
// (+, zone 0) and (-, zone n), which are degenerate at eps0 = n hw.

#include <optional>

#include "quasispec/bessel.hpp"

namespace quasispec {

struct QubitParams {
  double eps0 = 0.0;   // static splitting, any sign
  double delta = 0.0;  // tunneling amplitude, >= 0
  double amp = 0.0;    // drive amplitude, >= 0

  /// hbar w0 = sqrt(eps0^2 + delta^2).
  double omega0() const;
  /// Throws ConfigInvalid on negative delta or amp.
  void validate() const;
};

/// sqrt((eps0 - n)^2 + delta^2 J_n(amp)^2).
double rwa_quasienergy_gap(const QubitParams& p, int n, BesselFn j = bessel_j);

/// Second-order shift delta_d = 2 sum_{k != n} [delta J_k(amp)/2]^2 / (eps0 - k).
/// The k-sum is cut once the running term drops below 1e-12 of the sum in the
/// Bessel-decay region. Throws NearPole if a retained denominator is < 1e-6.
double delta_shift_diabatic(const QubitParams& p, int n, BesselFn j = bessel_j);

/// sqrt((eps0 + delta_d - n)^2 + delta^2 J_n(amp)^2).
double corrected_quasienergy_gap(const QubitParams& p, int n, BesselFn j = bessel_j);

struct AdiabaticParams {
  double diagonal_energy = 0.0;  // hbar w0, replaces eps0
  double coupling = 0.0;         // replaces delta J_n(amp)/2
};

/// Adiabatic-basis substitution for resonance n:
/// eps0 -> w0, delta J_n(A)/2 -> (n delta / 2 eps0) J_n(A eps0 / w0).
/// Throws DegenerateDiabatic when eps0 = 0.
AdiabaticParams adiabatic_params(const QubitParams& p, int n, BesselFn j = bessel_j);

/// Bare RWA gap in the adiabatic basis: sqrt((w0 - n)^2 + (2 g_n)^2).
double adiabatic_rwa_gap(const QubitParams& p, int n, BesselFn j = bessel_j);

/// delta_a = 2 sum_{k != n} g_k^2 / (w0 - k) with the adiabatic couplings g_k.
double delta_shift_adiabatic(const QubitParams& p, int n, BesselFn j = bessel_j);

/// sqrt((w0 + delta_a - n)^2 + (2 g_n)^2).
double adiabatic_corrected_gap(const QubitParams& p, int n, BesselFn j = bessel_j);

/// Landau-Zener probability exp(-2 pi delta^2 / (4 w sqrt(amp^2 - eps0^2))),
/// defined only for amp > |eps0|; std::nullopt otherwise.
std::optional<double> lz_probability(const QubitParams& p, double drive_frequency = 1.0);

enum class Basis { Diabatic, Adiabatic };

/// Adiabatic when amp < |eps0|, diabatic otherwise (boundary is diabatic).
Basis choose_basis(const QubitParams& p);

/// Second-order gap in the basis picked by choose_basis.
double analytic_quasienergy_gap(const QubitParams& p, int n, BesselFn j = bessel_j);

/// Resonance index nearest to the diagonal energy of the chosen basis.
int nearest_resonance(const QubitParams& p);

/// |F_fi|^2 = delta^2 J_n(amp)^2 / (rwa gap)^2. Throws DegenerateGap when the
/// RWA gap vanishes.
double rwa_transition_amplitude(const QubitParams& p, int n, BesselFn j = bessel_j);

}  // namespace quasispec
