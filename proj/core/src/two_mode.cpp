#include "quasispec/two_mode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "banded_eigen.hpp"
#include "quasispec/errors.hpp"

namespace quasispec {

namespace {

int max_key(const std::map<int, CMatrix>& blocks) {
  int m = 0;
  for (const auto& [k, b] : blocks) {
    if (b.cwiseAbs().maxCoeff() > 0.0) m = std::max(m, std::abs(k));
  }
  return m;
}

void check_probe(const ProbeCoupling& probe, int d) {
  if (!(probe.omega_p > 0.0)) throw NonPositiveFrequency("probe frequency must be > 0");
  for (const auto& [l, b] : probe.blocks) {
    if (b.rows() != d || b.cols() != d) {
      throw DimensionMismatch("probe block " + std::to_string(l) + " is not d x d");
    }
    const auto partner = probe.blocks.find(-l);
    const CMatrix expected = b.adjoint();
    const double mismatch = partner == probe.blocks.end()
                                ? expected.cwiseAbs().maxCoeff()
                                : (partner->second - expected).cwiseAbs().maxCoeff();
    if (mismatch > 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff())) {
      throw ConfigInvalid("probe blocks are not Hermitian-paired");
    }
  }
}

}  // namespace

ProbeCoupling qubit_probe_coupling(double amp_p, double omega_p) {
  ProbeCoupling c;
  c.omega_p = omega_p;
  if (amp_p != 0.0) {
    c.blocks.emplace(1, 0.25 * amp_p * pauli_z());
    c.blocks.emplace(-1, 0.25 * amp_p * pauli_z());
  }
  return c;
}

void TwoModeTruncation::validate(int d) const {
  if (n1_cutoff < 1 || n2_cutoff < 1) throw ConfigInvalid("two-mode cutoffs must be >= 1");
  const long rank = static_cast<long>(d) * (2L * n1_cutoff + 1) * (2L * n2_cutoff + 1);
  if (rank > max_rank) {
    throw MemoryCeiling("two-mode rank " + std::to_string(rank) + " exceeds the ceiling " +
                        std::to_string(max_rank));
  }
}

CMatrix build_two_mode_matrix(const AtomicHamiltonian& h, double omega,
                              const ProbeCoupling& probe, const TwoModeTruncation& trunc) {
  const int d = h.dimension();
  trunc.validate(d);
  check_probe(probe, d);
  if (trunc.n2_cutoff < max_key(probe.blocks)) {
    throw TruncationTooSmall("probe cutoff is below the probe harmonic content");
  }
  const CMatrix hf = build_floquet_matrix(h, omega, TruncationSpec::fixed(trunc.n1_cutoff));
  const Eigen::Index inner = hf.rows();
  const int outer = 2 * trunc.n2_cutoff + 1;
  CMatrix m = CMatrix::Zero(inner * outer, inner * outer);

  for (int a = 0; a < outer; ++a) {
    const int n2 = a - trunc.n2_cutoff;
    m.block(a * inner, a * inner, inner, inner) = hf;
    m.block(a * inner, a * inner, inner, inner).diagonal().array() += n2 * probe.omega_p;
    for (const auto& [l, b] : probe.blocks) {
      const int c = a + l;
      if (c < 0 || c >= outer) continue;
      for (int n1 = 0; n1 < 2 * trunc.n1_cutoff + 1; ++n1) {
        m.block(a * inner + n1 * d, c * inner + n1 * d, d, d) += b;
      }
    }
  }
  return m;
}

TwoModeSolution solve_two_mode(const AtomicHamiltonian& h, double omega,
                               const ProbeCoupling& probe, const TwoModeTruncation& trunc,
                               double lo, double hi) {
  const int d = h.dimension();
  trunc.validate(d);
  check_probe(probe, d);
  if (!(omega > 0.0)) throw NonPositiveFrequency("drive frequency must be > 0");
  if (trunc.n1_cutoff < std::max(1, h.max_harmonic()) ||
      trunc.n2_cutoff < max_key(probe.blocks)) {
    throw TruncationTooSmall("two-mode cutoffs are below the harmonic content");
  }
  if (!(hi > lo)) throw ConfigInvalid("empty eigenvalue window");

  const int n1c = trunc.n1_cutoff;
  const int n2c = trunc.n2_cutoff;
  const int width2 = 2 * n2c + 1;
  const int rank = d * (2 * n1c + 1) * width2;
  const int drive_reach = std::max(1, h.max_harmonic());
  const int kd = std::max(drive_reach * width2 * d + d - 1,
                          max_key(probe.blocks) * d + d - 1);

  // Drive-outer ordering keeps the matrix banded; it is a permutation of the
  // printed probe-outer ordering and has the same spectrum.
  auto index = [&](int n1, int n2, int s) { return ((n1 + n1c) * width2 + (n2 + n2c)) * d + s; };
  detail::HermitianBand band(rank, std::min(kd, rank - 1));
  for (int n1 = -n1c; n1 <= n1c; ++n1) {
    for (int n2 = -n2c; n2 <= n2c; ++n2) {
      for (int s = 0; s < d; ++s) {
        const int row = index(n1, n2, s);
        band.add_upper(row, row, n1 * omega + n2 * probe.omega_p);
        for (const auto& [k, blk] : h.blocks()) {
          if (k < 0 || n1 + k > n1c) continue;
          for (int t = (k == 0 ? s : 0); t < d; ++t) {
            band.add_upper(row, index(n1 + k, n2, t), blk(s, t));
          }
        }
        for (const auto& [l, blk] : probe.blocks) {
          if (l <= 0 || n2 + l > n2c) continue;
          for (int t = 0; t < d; ++t) band.add_upper(row, index(n1, n2 + l, t), blk(s, t));
        }
      }
    }
  }

  // zhbevx selects (lo', hi]; nudge so the returned window is [lo, hi).
  const double eps = 1e-13 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  detail::BandEigen eig =
      detail::band_eigen_in_window(std::move(band), lo - eps, hi - eps, trunc.adaptive);

  TwoModeSolution sol;
  sol.n1_cutoff = n1c;
  sol.n2_cutoff = n2c;
  for (std::size_t c = 0; c < eig.values.size(); ++c) {
    const double v = eig.values[c];
    if (v < lo || v >= hi) continue;
    if (trunc.adaptive) {
      double edge = 0.0;
      for (int n1 = -n1c; n1 <= n1c; ++n1) {
        for (int n2 = -n2c; n2 <= n2c; ++n2) {
          if (std::abs(n1) != n1c && std::abs(n2) != n2c) continue;
          for (int s = 0; s < d; ++s) {
            edge += std::norm(eig.vectors(index(n1, n2, s), static_cast<Eigen::Index>(c)));
          }
        }
      }
      if (edge > trunc.edge_tol) continue;
    }
    sol.levels.push_back(v);
    sol.quasienergies.push_back(fold_to_zone(v, omega));
  }
  std::sort(sol.quasienergies.begin(), sol.quasienergies.end());
  return sol;
}

double anticrossing_separation(const QubitParams& p, double amp_p, double omega_p,
                               const TwoModeTruncation& trunc, int probe_photons) {
  if (probe_photons < 1 || probe_photons > trunc.n2_cutoff) {
    throw ConfigInvalid("probe photon number must lie in [1, N2]");
  }
  const AtomicHamiltonian h = qubit_hamiltonian(p.eps0, p.delta, p.amp);
  const QuasienergySolution single =
      solve_quasienergies(h, 1.0, TruncationSpec::automatic(h, 1.0, 1e-12));
  const double e0 = single.states[0].quasienergy;
  const double e1 = single.states[1].quasienergy;

  // Pick the ordered pair (x, y) for which x and y + k omega_P are closest on
  // the quasienergy circle; the anti-crossing sits between them.
  double best = std::numeric_limits<double>::infinity();
  double centre = 0.0;
  for (const auto& [x, y] : {std::pair{e0, e1}, std::pair{e1, e0}}) {
    const double shifted = y + probe_photons * omega_p;
    const double mismatch = circular_distance(x, shifted, 1.0);
    if (mismatch < best) {
      best = mismatch;
      const double partner = shifted + std::round(x - shifted);
      centre = 0.5 * (x + partner);
    }
  }
  centre = fold_to_zone(centre, 1.0);
  if (centre >= 0.5) centre -= 1.0;

  // Away from the crossing the pair drifts apart, so widen the window once
  // before giving up.
  TwoModeSolution two;
  for (double half : {0.45 * omega_p, 1.05 * omega_p}) {
    two = solve_two_mode(h, 1.0, qubit_probe_coupling(amp_p, omega_p), trunc, centre - half,
                         centre + half);
    if (two.levels.size() >= 2) break;
  }
  if (two.levels.size() < 2) {
    throw NoConvergence("fewer than two two-mode levels near the crossing centre");
  }
  std::vector<double> levels = two.levels;
  std::sort(levels.begin(), levels.end(), [&](double a, double b) {
    return std::abs(a - centre) < std::abs(b - centre);
  });
  return std::abs(levels[0] - levels[1]);
}

AntiCrossing measure_anticrossing(const QubitParams& p, double amp_p, double omega_p,
                                  const AnticrossingScan& scan,
                                  const TwoModeTruncation& trunc) {
  if (!(scan.eps0_hi > scan.eps0_lo)) throw ConfigInvalid("empty eps0 interval");
  if (scan.samples < 3) throw ConfigInvalid("at least 3 bracketing samples are needed");
  auto separation = [&](double eps0) {
    QubitParams q = p;
    q.eps0 = eps0;
    return anticrossing_separation(q, amp_p, omega_p, trunc, scan.probe_photons);
  };

  const double step = (scan.eps0_hi - scan.eps0_lo) / (scan.samples - 1);
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < scan.samples; ++i) {
    const double v = separation(scan.eps0_lo + i * step);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best == 0 || best == scan.samples - 1) {
    throw NoBracket("level separation is smallest at an end of [" +
                    std::to_string(scan.eps0_lo) + ", " + std::to_string(scan.eps0_hi) + "]");
  }

  // Golden-section refinement on the bracketing pair of coarse intervals.
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = scan.eps0_lo + (best - 1) * step;
  double b = scan.eps0_lo + (best + 1) * step;
  double c = b - ratio * (b - a);
  double e = a + ratio * (b - a);
  double fc = separation(c);
  double fe = separation(e);
  while (b - a > scan.location_tol) {
    if (fc < fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - ratio * (b - a);
      fc = separation(c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + ratio * (b - a);
      fe = separation(e);
    }
  }
  AntiCrossing out;
  out.location = fc < fe ? c : e;
  out.gap = std::min({fc, fe, best_value});
  if (out.gap == best_value && best_value < std::min(fc, fe)) {
    out.location = scan.eps0_lo + best * step;
  }
  return out;
}

}  // namespace quasispec
