#pragma once

// Single-mode Floquet machinery: Fourier-block Hamiltonians, the truncated
// Sambe-space Floquet matrix, and the zone-folded quasienergy solution.
//
// Units: hbar = 1 throughout. Energies are measured in the same unit as the
// drive frequency `omega`; the qubit helpers use omega = 1 (energies in hw).
//
// Fourier convention: a Hamiltonian with blocks h^(k) is
//     H(t) = sum_k h^(k) exp(-i k omega t),
// which makes the Floquet matrix blocks (H_F)^(n,m) = n omega delta_nm + h^(m-n)
// when the periodic state is expanded as u(t) = sum_n c^(n) exp(i n omega t).

#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace quasispec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Periodically driven Hamiltonian given by its Fourier blocks.
class AtomicHamiltonian {
 public:
  /// Throws ConfigInvalid when blocks have the wrong shape, when d < 2, or
  /// when h^(-n) differs from the adjoint of h^(n).
  AtomicHamiltonian(int dimension, std::map<int, CMatrix> blocks);

  int dimension() const { return dimension_; }
  int max_harmonic() const { return max_harmonic_; }
  const std::map<int, CMatrix>& blocks() const { return blocks_; }

  /// h^(n), or a zero matrix when the harmonic is absent.
  CMatrix block(int n) const;

  /// Time-domain value H(t) for drive frequency omega.
  CMatrix at_time(double t, double omega) const;

  /// Blocks conjugated as U^dagger h^(n) U (a fixed change of atomic basis).
  AtomicHamiltonian transformed(const CMatrix& unitary) const;

 private:
  int dimension_;
  int max_harmonic_ = 0;
  std::map<int, CMatrix> blocks_;
};

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix identity2();

/// Driven qubit H(t) = (eps0 sz + delta sx)/2 + (amp/2) cos(t) sz in units of hw,
/// i.e. h^(0) = (eps0 sz + delta sx)/2 and h^(+-1) = (amp/4) sz.
/// Negative eps0 or amp are accepted (used by the symmetry checks).
AtomicHamiltonian qubit_hamiltonian(double eps0, double delta, double amp);

struct TruncationSpec {
  int photon_cutoff = 16;          // harmonics -N..N are retained
  double convergence_tol = 1e-10;  // in units of omega
  bool adaptive = true;
  int max_cutoff = 2048;           // ceiling for adaptive doubling

  /// Adaptive spec starting from initial_cutoff(h).
  static TruncationSpec automatic(const AtomicHamiltonian& h, double omega = 1.0,
                                  double tol = 1e-10);
  static TruncationSpec fixed(int photon_cutoff);

  void validate() const;
};

/// Starting cutoff 8 + ceil(drive bandwidth) + ceil(static mixing), where for
/// the qubit the two terms reduce to ceil(A/hw) and ceil(Delta/hw).
int initial_cutoff(const AtomicHamiltonian& h, double omega = 1.0);

struct QuasienergyState {
  double quasienergy = 0.0;  // folded into [0, omega)
  int first_harmonic = 0;    // harmonic index of column 0 of `coefficients`
  CMatrix coefficients;      // d x (number of stored harmonics)

  int last_harmonic() const {
    return first_harmonic + static_cast<int>(coefficients.cols()) - 1;
  }
  /// c^(n)_sigma, zero outside the stored range.
  Complex coefficient(int sigma, int n) const;
};

struct QuasienergySolution {
  double omega = 1.0;
  int dimension = 0;
  std::vector<QuasienergyState> states;  // ascending folded quasienergy
  int photon_cutoff = 0;                 // achieved truncation
  double truncation_error = 0.0;         // NaN when not estimated

  std::vector<double> quasienergies() const;
};

/// Dense Hermitian Floquet matrix of rank d(2N+1), rows ordered (n, sigma)
/// with n running from -N to N. Throws TruncationTooSmall when N is below
/// the largest harmonic present in h.
CMatrix build_floquet_matrix(const AtomicHamiltonian& h, double omega,
                             const TruncationSpec& trunc);

/// Solves the Floquet eigenproblem and returns one representative per
/// quasienergy ladder. Eigenpairs closest to the spectrum center are kept and
/// their coefficients are relabeled so they belong to the folded quasienergy.
QuasienergySolution solve_quasienergies(const AtomicHamiltonian& h, double omega,
                                        const TruncationSpec& trunc);

/// raw mod omega in [0, omega).
double fold_to_zone(double raw, double omega);

/// Distance between two energies on the circle of circumference omega.
double circular_distance(double a, double b, double omega);

/// Largest circular distance between matched members of two quasienergy
/// sets of equal size (greedy nearest match on sorted copies).
double max_quasienergy_mismatch(std::vector<double> a, std::vector<double> b,
                                double omega);

struct QubitLabels {
  std::size_t plus = 0;
  std::size_t minus = 1;
};

/// epsilon_+ is the state with the larger weight on the (sigma_z = +1, n = 0)
/// Sambe vector; ties go to the larger quasienergy.
QubitLabels label_qubit_states(const QuasienergySolution& sol);

/// |epsilon_+ - epsilon_-| of the folded representatives. Requires d = 2.
double quasienergy_gap(const QuasienergySolution& sol);

/// Harmonic-resolved matrix elements of a periodic operator F(t) (same
/// Fourier convention as the Hamiltonian) between quasienergy states:
///     M_n(p, q) = sum_{k, m} <c_p^(k)| F^(m) |c_q^(k + n + m)>,
/// so that <u_p(t)|F(t)|u_q(t)> = sum_n M_n(p, q) exp(i n omega t) and the
/// pair (p, q, n) oscillates at epsilon_p - epsilon_q + n omega.
struct HarmonicElements {
  int n_range = 0;
  std::vector<CMatrix> by_harmonic;  // index n + n_range, each d x d

  const CMatrix& at(int n) const { return by_harmonic.at(static_cast<std::size_t>(n + n_range)); }
  Complex at(std::size_t p, std::size_t q, int n) const {
    return at(n)(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
  }
};

/// Covers |n| <= n_range (default: every harmonic the stored coefficients can
/// reach). Throws TailNotConverged when an element at |n| = n_range exceeds
/// `tail_tol` in magnitude.
HarmonicElements harmonic_matrix_elements(const QuasienergySolution& sol,
                                          const std::map<int, CMatrix>& op_blocks,
                                          int n_range = -1, double tail_tol = 1e-10);

}  // namespace quasispec
