#include "quasispec/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

#include "quasispec/errors.hpp"

namespace quasispec {

namespace {

constexpr double kHermiticityTol = 1e-12;

double matrix_scale(const std::map<int, CMatrix>& blocks) {
  double scale = 1.0;
  for (const auto& [n, b] : blocks) scale = std::max(scale, b.cwiseAbs().maxCoeff());
  return scale;
}

struct Eigenpairs {
  Eigen::VectorXd values;
  CMatrix vectors;
};

// The qubit Floquet matrix is real symmetric; the real solver is several
// times faster and gives the same eigenpairs.
Eigenpairs hermitian_eigenpairs(const CMatrix& m) {
  Eigenpairs out;
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.real());
    if (solver.info() != Eigen::Success) {
      throw NoConvergence("Hermitian eigensolver failed");
    }
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
    if (solver.info() != Eigen::Success) {
      throw NoConvergence("Hermitian eigensolver failed");
    }
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
  }
  return out;
}

// Mean harmonic index sum_n n |c^(n)|^2 of a Sambe eigenvector. Shifting a
// state along its ladder by j zones shifts this centroid by exactly j.
double harmonic_centroid(const CVector& v, int d, int cutoff) {
  double c = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    c += (static_cast<int>(i / d) - cutoff) * std::norm(v[i]);
  }
  return c;
}

// True when two picked eigenvectors are members of the same ladder, i.e. one
// is (up to truncation) the other shifted by a whole number of zones.
bool same_ladder(const Eigenpairs& eig, Eigen::Index a, Eigen::Index b, double omega,
                 int d) {
  const long shift = std::lround((eig.values[b] - eig.values[a]) / omega);
  if (shift == 0) return false;
  const Eigen::Index offset = static_cast<Eigen::Index>(shift) * d;
  const Eigen::Index len = eig.vectors.rows() - std::abs(offset);
  if (len <= 0) return false;
  const auto va = eig.vectors.col(a);
  const auto vb = eig.vectors.col(b);
  const Complex overlap =
      offset > 0 ? va.segment(0, len).dot(vb.segment(offset, len))
                 : va.segment(-offset, len).dot(vb.segment(0, len));
  return std::abs(overlap) > 0.5;
}

// Indices of the d eigenpairs forming one zone around `center`: the half-open
// window [center - omega/2, center + omega/2) when it holds exactly d values
// from distinct ladders. Rounding can push ladder members across the window
// edges at exact folded degeneracies; the fallback then keeps the d vectors
// whose harmonic centroid is closest to zero, one per ladder.
std::vector<Eigen::Index> central_zone(const Eigenpairs& eig, double center, double omega,
                                       int d, int cutoff) {
  const Eigen::VectorXd& values = eig.values;
  std::vector<Eigen::Index> picked;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (v >= center - 0.5 * omega && v < center + 0.5 * omega) picked.push_back(i);
  }
  bool distinct = static_cast<int>(picked.size()) == d;
  for (std::size_t a = 0; distinct && a < picked.size(); ++a) {
    for (std::size_t b = a + 1; distinct && b < picked.size(); ++b) {
      if (same_ladder(eig, picked[a], picked[b], omega, d)) distinct = false;
    }
  }
  if (distinct) return picked;

  std::vector<double> centroid(static_cast<std::size_t>(values.size()));
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    centroid[static_cast<std::size_t>(i)] =
        std::abs(harmonic_centroid(eig.vectors.col(i), d, cutoff));
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return centroid[static_cast<std::size_t>(a)] < centroid[static_cast<std::size_t>(b)];
  });
  order.resize(static_cast<std::size_t>(d));
  std::sort(order.begin(), order.end());
  return order;
}

QuasienergySolution solve_fixed(const AtomicHamiltonian& h, double omega, int cutoff) {
  const int d = h.dimension();
  const CMatrix hf = build_floquet_matrix(h, omega, TruncationSpec::fixed(cutoff));
  const Eigenpairs eig = hermitian_eigenpairs(hf);

  const double center = h.block(0).trace().real() / d;
  const auto zone = central_zone(eig, center, omega, d, cutoff);
  const int harmonics = 2 * cutoff + 1;

  QuasienergySolution sol;
  sol.omega = omega;
  sol.dimension = d;
  sol.photon_cutoff = cutoff;
  sol.truncation_error = std::numeric_limits<double>::quiet_NaN();
  for (Eigen::Index idx : zone) {
    const double raw = eig.values[idx];
    const double folded = fold_to_zone(raw, omega);
    // raw = folded + shift * omega; the folded ladder member carries the
    // coefficients c_fold^(j) = c_raw^(j + shift).
    const int shift = static_cast<int>(std::lround((raw - folded) / omega));

    QuasienergyState state;
    state.quasienergy = folded;
    state.first_harmonic = -cutoff - shift;
    state.coefficients.resize(d, harmonics);
    for (int col = 0; col < harmonics; ++col) {
      state.coefficients.col(col) = eig.vectors.col(idx).segment(col * d, d);
    }
    sol.states.push_back(std::move(state));
  }
  std::sort(sol.states.begin(), sol.states.end(),
            [](const QuasienergyState& a, const QuasienergyState& b) {
              return a.quasienergy < b.quasienergy;
            });
  return sol;
}

}  // namespace

AtomicHamiltonian::AtomicHamiltonian(int dimension, std::map<int, CMatrix> blocks)
    : dimension_(dimension), blocks_(std::move(blocks)) {
  if (dimension_ < 2) {
    throw ConfigInvalid("atomic dimension must be at least 2");
  }
  for (const auto& [n, b] : blocks_) {
    if (b.rows() != dimension_ || b.cols() != dimension_) {
      throw ConfigInvalid("Fourier block " + std::to_string(n) + " has wrong shape");
    }
  }
  const double tol = kHermiticityTol * matrix_scale(blocks_);
  for (const auto& [n, b] : blocks_) {
    const auto partner = blocks_.find(-n);
    const CMatrix expected = b.adjoint();
    const double mismatch = partner == blocks_.end()
                                ? expected.cwiseAbs().maxCoeff()
                                : (partner->second - expected).cwiseAbs().maxCoeff();
    if (mismatch > tol) {
      throw ConfigInvalid("h^(" + std::to_string(-n) + ") is not the adjoint of h^(" +
                          std::to_string(n) + ")");
    }
    if (b.cwiseAbs().maxCoeff() > 0.0) {
      max_harmonic_ = std::max(max_harmonic_, std::abs(n));
    }
  }
}

CMatrix AtomicHamiltonian::block(int n) const {
  const auto it = blocks_.find(n);
  if (it == blocks_.end()) return CMatrix::Zero(dimension_, dimension_);
  return it->second;
}

CMatrix AtomicHamiltonian::at_time(double t, double omega) const {
  CMatrix out = CMatrix::Zero(dimension_, dimension_);
  for (const auto& [n, b] : blocks_) {
    out += b * std::exp(Complex(0.0, -n * omega * t));
  }
  return out;
}

AtomicHamiltonian AtomicHamiltonian::transformed(const CMatrix& unitary) const {
  std::map<int, CMatrix> rotated;
  for (const auto& [n, b] : blocks_) rotated.emplace(n, unitary.adjoint() * b * unitary);
  return AtomicHamiltonian(dimension_, std::move(rotated));
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix identity2() { return CMatrix::Identity(2, 2); }

AtomicHamiltonian qubit_hamiltonian(double eps0, double delta, double amp) {
  std::map<int, CMatrix> blocks;
  blocks.emplace(0, 0.5 * (eps0 * pauli_z() + delta * pauli_x()));
  if (amp != 0.0) {
    blocks.emplace(1, 0.25 * amp * pauli_z());
    blocks.emplace(-1, 0.25 * amp * pauli_z());
  }
  return AtomicHamiltonian(2, std::move(blocks));
}

TruncationSpec TruncationSpec::automatic(const AtomicHamiltonian& h, double omega,
                                         double tol) {
  TruncationSpec spec;
  spec.photon_cutoff = initial_cutoff(h, omega);
  spec.convergence_tol = tol;
  spec.adaptive = true;
  return spec;
}

TruncationSpec TruncationSpec::fixed(int photon_cutoff) {
  TruncationSpec spec;
  spec.photon_cutoff = photon_cutoff;
  spec.adaptive = false;
  return spec;
}

void TruncationSpec::validate() const {
  if (photon_cutoff < 1) throw TruncationTooSmall("photon cutoff must be >= 1");
  if (!(convergence_tol > 0.0)) throw ConfigInvalid("convergence_tol must be > 0");
  if (adaptive && max_cutoff < photon_cutoff) {
    throw ConfigInvalid("max_cutoff is below the starting cutoff");
  }
}

int initial_cutoff(const AtomicHamiltonian& h, double omega) {
  double drive = 0.0;
  for (const auto& [n, b] : h.blocks()) {
    if (n > 0) drive += 4.0 * b.operatorNorm() / omega;
  }
  CMatrix offdiag = h.block(0);
  offdiag.diagonal().setZero();
  const double mixing = 2.0 * offdiag.operatorNorm() / omega;
  const int estimate = 8 + static_cast<int>(std::ceil(drive - 1e-12)) +
                       static_cast<int>(std::ceil(mixing - 1e-12));
  return std::max(estimate, std::max(1, h.max_harmonic()));
}

Complex QuasienergyState::coefficient(int sigma, int n) const {
  if (n < first_harmonic || n > last_harmonic()) return Complex(0.0, 0.0);
  return coefficients(sigma, n - first_harmonic);
}

std::vector<double> QuasienergySolution::quasienergies() const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.quasienergy);
  return out;
}

CMatrix build_floquet_matrix(const AtomicHamiltonian& h, double omega,
                             const TruncationSpec& trunc) {
  if (!(omega > 0.0)) throw NonPositiveFrequency("drive frequency must be > 0");
  if (trunc.photon_cutoff < std::max(1, h.max_harmonic())) {
    throw TruncationTooSmall("cutoff " + std::to_string(trunc.photon_cutoff) +
                             " is below the largest harmonic " +
                             std::to_string(h.max_harmonic()));
  }
  const int d = h.dimension();
  const int cutoff = trunc.photon_cutoff;
  const int harmonics = 2 * cutoff + 1;
  CMatrix hf = CMatrix::Zero(d * harmonics, d * harmonics);

  for (int row = 0; row < harmonics; ++row) {
    const int n = row - cutoff;
    for (const auto& [k, b] : h.blocks()) {
      const int col = row + k;  // m - n = k
      if (col < 0 || col >= harmonics) continue;
      hf.block(row * d, col * d, d, d) += b;
    }
    for (int s = 0; s < d; ++s) hf(row * d + s, row * d + s) += n * omega;
  }
  return hf;
}

QuasienergySolution solve_quasienergies(const AtomicHamiltonian& h, double omega,
                                        const TruncationSpec& trunc) {
  trunc.validate();
  if (!(omega > 0.0)) throw NonPositiveFrequency("drive frequency must be > 0");
  int cutoff = std::max(trunc.photon_cutoff, h.max_harmonic());
  QuasienergySolution coarse = solve_fixed(h, omega, cutoff);
  if (!trunc.adaptive) return coarse;

  while (true) {
    const int refined_cutoff = 2 * cutoff;
    if (refined_cutoff > trunc.max_cutoff) {
      throw NoConvergence("quasienergies did not settle below " +
                          std::to_string(trunc.convergence_tol) + " before cutoff " +
                          std::to_string(trunc.max_cutoff));
    }
    QuasienergySolution fine = solve_fixed(h, omega, refined_cutoff);
    const double change =
        max_quasienergy_mismatch(coarse.quasienergies(), fine.quasienergies(), omega);
    if (change < trunc.convergence_tol) {
      fine.truncation_error = change;
      return fine;
    }
    cutoff = refined_cutoff;
    coarse = std::move(fine);
  }
}

double fold_to_zone(double raw, double omega) {
  double r = std::fmod(raw, omega);
  if (r < 0.0) r += omega;
  if (r >= omega) r -= omega;
  return r;
}

double circular_distance(double a, double b, double omega) {
  const double diff = fold_to_zone(a - b, omega);
  return std::min(diff, omega - diff);
}

double max_quasienergy_mismatch(std::vector<double> a, std::vector<double> b,
                                double omega) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("quasienergy sets differ in size");
  }
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  for (double x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double dist = circular_distance(x, b[j], omega);
      if (dist < best) {
        best = dist;
        best_j = j;
      }
    }
    used[best_j] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

QubitLabels label_qubit_states(const QuasienergySolution& sol) {
  if (sol.dimension != 2 || sol.states.size() != 2) {
    throw DimensionMismatch("qubit labeling requires d = 2");
  }
  const double w0 = std::norm(sol.states[0].coefficient(0, 0));
  const double w1 = std::norm(sol.states[1].coefficient(0, 0));
  QubitLabels labels;
  bool first_is_plus;
  if (std::abs(w0 - w1) <= 1e-12) {
    first_is_plus = sol.states[0].quasienergy >= sol.states[1].quasienergy;
  } else {
    first_is_plus = w0 > w1;
  }
  labels.plus = first_is_plus ? 0 : 1;
  labels.minus = first_is_plus ? 1 : 0;
  return labels;
}

double quasienergy_gap(const QuasienergySolution& sol) {
  const QubitLabels labels = label_qubit_states(sol);
  return std::abs(sol.states[labels.plus].quasienergy -
                  sol.states[labels.minus].quasienergy);
}

HarmonicElements harmonic_matrix_elements(const QuasienergySolution& sol,
                                          const std::map<int, CMatrix>& op_blocks,
                                          int n_range, double tail_tol) {
  const std::size_t count = sol.states.size();
  const int d = sol.dimension;
  for (const auto& [m, f] : op_blocks) {
    if (f.rows() != d || f.cols() != d) {
      throw DimensionMismatch("operator block " + std::to_string(m) + " is not d x d");
    }
  }

  int reach = 0;
  int max_m = 0;
  for (const auto& [m, f] : op_blocks) max_m = std::max(max_m, std::abs(m));
  for (const auto& p : sol.states) {
    for (const auto& q : sol.states) {
      reach = std::max({reach, std::abs(q.last_harmonic() - p.first_harmonic),
                        std::abs(q.first_harmonic - p.last_harmonic())});
    }
  }
  reach += max_m;
  if (n_range < 0) n_range = reach;

  HarmonicElements out;
  out.n_range = n_range;
  out.by_harmonic.assign(static_cast<std::size_t>(2 * n_range + 1),
                         CMatrix::Zero(static_cast<Eigen::Index>(count),
                                       static_cast<Eigen::Index>(count)));

  for (std::size_t p = 0; p < count; ++p) {
    const auto& sp = sol.states[p];
    for (std::size_t q = 0; q < count; ++q) {
      const auto& sq = sol.states[q];
      for (const auto& [m, f] : op_blocks) {
        // overlap(a, b) = c_p^(fp + a)^dagger F^(m) c_q^(fq + b)
        const CMatrix overlap = sp.coefficients.adjoint() * (f * sq.coefficients);
        for (Eigen::Index a = 0; a < overlap.rows(); ++a) {
          for (Eigen::Index b = 0; b < overlap.cols(); ++b) {
            const int n = (sq.first_harmonic + static_cast<int>(b)) -
                          (sp.first_harmonic + static_cast<int>(a)) - m;
            if (std::abs(n) > n_range) continue;
            out.by_harmonic[static_cast<std::size_t>(n + n_range)](
                static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) += overlap(a, b);
          }
        }
      }
    }
  }

  const double tail = std::max(out.by_harmonic.front().cwiseAbs().maxCoeff(),
                               out.by_harmonic.back().cwiseAbs().maxCoeff());
  if (tail > tail_tol) {
    char text[128];
    std::snprintf(text, sizeof text, "edge harmonic element %.3g exceeds %.3g at |n| = %d", tail,
                  tail_tol, n_range);
    throw TailNotConverged(text);
  }
  return out;
}

}  // namespace quasispec
