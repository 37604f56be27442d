#pragma once

// Brute-force absorption spectrum of the driven qubit from a Lindblad master
// equation. Relaxation (rate 1/T1, split thermally between down and up
// transitions) and pure dephasing are defined in the eigenbasis of the static
// Hamiltonian. The steady state is time-periodic, so the sz two-time
// correlator is averaged over its start time within one drive period before
// the finite-horizon Fourier transform.

#include <limits>
#include <vector>

#include "quasispec/analytic_qubit.hpp"

namespace quasispec {

struct LindbladSpec {
  double t1 = 1.0;
  double t2 = 1.0;  // 1/T2 >= 1/(2 T1)
  double beta = std::numeric_limits<double>::infinity();  // hw/kT of the relaxation channel
  double horizon = 0.0;       // correlator length; <= 0 selects 30 max(T1, T2)
  double amp_p = 1.0;         // probe amplitude in the A_P^2 / 16 prefactor
  int period_samples = 256;   // propagator samples per drive period
  int t0_samples = 16;        // start times averaged over one period
  double integrator_tol = 1e-12;

  /// Throws ConfigInvalid on non-positive times, 1/T2 < 1/(2 T1), or sample
  /// counts that do not divide evenly, and HorizonTooShort when the
  /// resolution 2 pi / horizon is coarser than 1/(4 T2).
  void validate() const;
  double effective_horizon() const;
};

struct CorrelatorSpectrum {
  std::vector<double> omega_p;
  std::vector<double> values;           // S(omega_P)
  double periodicity_residual = 0.0;    // |M c - c| of the steady state
  double max_trace_error = 0.0;         // over all stored propagators
  double min_eigenvalue = 1.0;          // smallest rho_ss(t) eigenvalue seen
  double mean_sz = 0.0;                 // period average of <sz>
};

/// S(w) = (A_P^2/16) 2 Re int_0^H w(s) Cbar(s) exp(i w s) ds with the connected
/// correlator Cbar(s) = <sz(t0 + s) sz(t0)> - <sz(t0 + s)><sz(t0)> averaged
/// over t0 and a cosine taper w on the last 10% of the horizon. Throws
/// SteadyStateNotReached when the periodic fixed point has residual > 1e-8.
CorrelatorSpectrum lindblad_sigma_z_spectrum(const QubitParams& p,
                                             const std::vector<double>& omega_p_grid,
                                             const LindbladSpec& spec);

}  // namespace quasispec
