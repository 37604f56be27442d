#pragma once

// Brute-force quasienergies from the one-period propagator U(tau), obtained
// by integrating i dU/dt = H(t) U from the identity. Its eigenvalues are
// exp(-i eps tau), which gives the quasienergies without Sambe space.

#include <vector>

#include "quasispec/floquet.hpp"

namespace quasispec {

struct PropagatorResult {
  CMatrix propagator;                 // U(tau), d x d
  std::vector<double> quasienergies;  // folded into [0, omega), ascending
  double unitarity_error = 0.0;       // max |U^dagger U - 1| elementwise
  double determinant_error = 0.0;     // ||det U| - 1|
};

/// Integrates over tau = 2 pi / omega with an adaptive 7(8)-order
/// Runge-Kutta-Fehlberg scheme at absolute and relative tolerance
/// `integrator_tol` in [1e-14, 1e-6]. Throws ConfigInvalid for a tolerance
/// outside that range and IntegratorFailure on step-size collapse or a
/// non-finite state.
PropagatorResult monodromy_propagator(const AtomicHamiltonian& h, double omega,
                                      double integrator_tol = 1e-12);

/// Folded quasienergies of monodromy_propagator.
std::vector<double> monodromy_quasienergies(const AtomicHamiltonian& h, double omega,
                                            double integrator_tol = 1e-12);

}  // namespace quasispec
