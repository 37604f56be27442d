#pragma once

// Bichromatic Floquet problem: a drive at omega plus a probe at omega_P of
// arbitrary strength. States carry two photon indices and the quasienergies
// form the quasiperiodic lattice eps_r + n1 omega + n2 omega_P.

#include <map>
#include <vector>

#include "quasispec/analytic_qubit.hpp"
#include "quasispec/floquet.hpp"

namespace quasispec {

/// Probe term sum_l B^(l) exp(-i l omega_P t) acting at drive harmonic zero.
struct ProbeCoupling {
  double omega_p = 0.1;
  std::map<int, CMatrix> blocks;
};

/// Probe A_P cos(omega_P t) sz / 2 on a qubit: B^(+-1) = (A_P/4) sz.
ProbeCoupling qubit_probe_coupling(double amp_p, double omega_p);

struct TwoModeTruncation {
  int n1_cutoff = 20;  // drive harmonics -N1..N1
  int n2_cutoff = 4;   // probe harmonics -N2..N2
  double convergence_tol = 1e-10;
  int max_rank = 4096;     // d (2N1+1)(2N2+1) must not exceed this
  bool adaptive = false;   // drop levels leaking onto the truncation edges
  double edge_tol = 1e-8;  // weight allowed on the outermost shells

  /// Throws ConfigInvalid on cutoffs < 1 and MemoryCeiling when the rank
  /// d (2N1+1)(2N2+1) exceeds max_rank.
  void validate(int d) const;
};

/// Dense matrix in the printed probe-outer ordering
/// row = ((n2 + N2)(2N1 + 1) + (n1 + N1)) d + sigma: diagonal blocks
/// H_F(N1) + n2 omega_P and off-diagonal blocks B^(n2' - n2) repeated over n1.
CMatrix build_two_mode_matrix(const AtomicHamiltonian& h, double omega,
                              const ProbeCoupling& probe, const TwoModeTruncation& trunc);

struct AntiCrossing {
  double location = 0.0;  // eps0 at the minimum separation
  double gap = 0.0;       // minimum separation
};

struct TwoModeSolution {
  std::vector<double> levels;         // raw eigenvalues in the requested window, ascending
  std::vector<double> quasienergies;  // the same folded into [0, omega), ascending
  int n1_cutoff = 0;
  int n2_cutoff = 0;
  std::vector<AntiCrossing> gaps;
};

/// Eigenvalues of the two-mode matrix inside [lo, hi) computed with a banded
/// solver on the equivalent drive-outer ordering. With trunc.adaptive the
/// eigenvectors are inspected and levels whose weight on the outermost
/// shells exceeds edge_tol are discarded.
TwoModeSolution solve_two_mode(const AtomicHamiltonian& h, double omega,
                               const ProbeCoupling& probe, const TwoModeTruncation& trunc,
                               double lo = -0.5, double hi = 0.5);

struct AnticrossingScan {
  double eps0_lo = 0.0;
  double eps0_hi = 0.0;
  int samples = 21;             // coarse bracketing samples
  double location_tol = 1e-6;   // golden-section tolerance in eps0
  int probe_photons = 1;        // k in the pairing eps_a ~ eps_b + k omega_P
};

/// Minimum over eps0 of the separation between the two two-mode levels that
/// descend from the single-mode pair eps_a and eps_b + k omega_P (k probe
/// photons apart, k = scan.probe_photons). `p.eps0` is ignored; delta and amp are fixed. Throws
/// NoBracket when the separation is smallest at an end of the interval.
AntiCrossing measure_anticrossing(const QubitParams& p, double amp_p, double omega_p,
                                  const AnticrossingScan& scan,
                                  const TwoModeTruncation& trunc);

/// Separation used by measure_anticrossing at one eps0.
double anticrossing_separation(const QubitParams& p, double amp_p, double omega_p,
                               const TwoModeTruncation& trunc, int probe_photons = 1);

}  // namespace quasispec
