#include "quasispec/probe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/roots.hpp>
#include <string>

#include "quasispec/errors.hpp"

namespace quasispec {

void ProbeSpec::validate() const {
  if (!(omega_p > 0.0)) throw ConfigInvalid("probe frequency must be > 0");
  if (!std::isfinite(amp_p)) throw ConfigInvalid("probe amplitude must be finite");
  if (f_s_blocks.empty()) throw ConfigInvalid("probe operator has no Fourier blocks");
  for (const auto& [m, b] : f_s_blocks) {
    const auto partner = f_s_blocks.find(-m);
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    const double mismatch = partner == f_s_blocks.end()
                                ? b.cwiseAbs().maxCoeff()
                                : (partner->second - b.adjoint()).cwiseAbs().maxCoeff();
    if (mismatch > 1e-12 * scale) {
      throw ConfigInvalid("probe block " + std::to_string(-m) + " is not the adjoint of block " +
                          std::to_string(m));
    }
  }
}

HarmonicElements probe_matrix_elements(const QuasienergySolution& sol,
                                       const ProbeSpec& probe, int zone_span) {
  probe.validate();
  return harmonic_matrix_elements(sol, probe.f_s_blocks, zone_span);
}

std::vector<double> golden_rule_spectrum(const HarmonicElements& f,
                                         const std::vector<double>& quasienergies,
                                         const std::vector<double>& populations,
                                         double gamma, const ProbeSpec& probe,
                                         const std::vector<double>& omega_p_grid,
                                         double omega) {
  const std::size_t count = quasienergies.size();
  if (populations.size() != count) {
    throw DimensionMismatch("one population per quasienergy state is required");
  }
  if (!f.by_harmonic.empty() && static_cast<std::size_t>(f.by_harmonic.front().rows()) != count) {
    throw DimensionMismatch("matrix element table does not match the state count");
  }

  // Collect the absorptive lines once, then sum Lorentzians per frequency.
  struct Line {
    double frequency;
    double weight;
  };
  std::vector<Line> lines;
  for (std::size_t i = 0; i < count; ++i) {
    if (populations[i] == 0.0) continue;
    for (std::size_t fin = 0; fin < count; ++fin) {
      for (int n = -f.n_range; n <= f.n_range; ++n) {
        const double w = quasienergies[fin] - quasienergies[i] + n * omega;
        if (!(w > 0.0)) continue;
        const double strength = std::norm(f.at(fin, i, n));
        if (strength == 0.0) continue;
        lines.push_back({w, populations[i] * strength});
      }
    }
  }

  const double prefactor = probe.amp_p * probe.amp_p * gamma;
  const double half_width_sq = 0.25 * gamma * gamma;
  std::vector<double> out;
  out.reserve(omega_p_grid.size());
  for (double wp : omega_p_grid) {
    double sum = 0.0;
    for (const Line& line : lines) {
      const double detuning = line.frequency - wp;
      sum += line.weight / (detuning * detuning + half_width_sq);
    }
    out.push_back(prefactor * sum);
  }
  return out;
}

double golden_rule_rate(const HarmonicElements& f, const std::vector<double>& quasienergies,
                        const std::vector<double>& populations, double gamma,
                        const ProbeSpec& probe, double omega) {
  probe.validate();
  return golden_rule_spectrum(f, quasienergies, populations, gamma, probe, {probe.omega_p},
                              omega)
      .front();
}

double golden_rule_rate(const QuasienergySolution& sol, const RateSet& rates,
                        const ProbeSpec& probe) {
  const HarmonicElements f = probe_matrix_elements(sol, probe);
  std::vector<double> pops(sol.states.size(), 0.0);
  pops[rates.x_table.labels.minus] = rates.p_minus;
  pops[rates.x_table.labels.plus] = rates.p_plus;
  return golden_rule_rate(f, sol.quasienergies(), pops, rates.gamma, probe, sol.omega);
}

QubitAbsorption qubit_absorption(const QubitParams& p, const BathParams& bath,
                                 const ProbeSpec& probe, double tol) {
  const AtomicHamiltonian h = qubit_hamiltonian(p.eps0, p.delta, p.amp);
  const QuasienergySolution sol =
      solve_quasienergies(h, 1.0, TruncationSpec::automatic(h, 1.0, tol));
  QubitAbsorption out;
  out.rates = gamma_and_populations(x_elements(sol), qubit_quasienergies(sol), bath);
  out.rate = golden_rule_rate(sol, out.rates, probe);
  out.gap = quasienergy_gap(sol);
  out.photon_cutoff = sol.photon_cutoff;
  return out;
}

double resonant_transition_strength(const QuasienergySolution& sol, const ProbeSpec& probe,
                                    double frequency) {
  const HarmonicElements f = probe_matrix_elements(sol, probe);
  double best_distance = std::numeric_limits<double>::infinity();
  double strength = 0.0;
  for (std::size_t i = 0; i < sol.states.size(); ++i) {
    for (std::size_t fin = 0; fin < sol.states.size(); ++fin) {
      if (fin == i) continue;
      for (int n = -f.n_range; n <= f.n_range; ++n) {
        const double w =
            sol.states[fin].quasienergy - sol.states[i].quasienergy + n * sol.omega;
        const double distance = std::abs(w - frequency);
        if (distance < best_distance) {
          best_distance = distance;
          strength = std::norm(f.at(fin, i, n));
        }
      }
    }
  }
  return strength;
}

std::optional<double> gap_contour_eps0(const QubitParams& p, double level, double eps_lo,
                                       double eps_hi, double tol) {
  auto residual = [&](double eps0) {
    const AtomicHamiltonian h = qubit_hamiltonian(eps0, p.delta, p.amp);
    return quasienergy_gap(solve_quasienergies(h, 1.0, TruncationSpec::automatic(h, 1.0, 1e-12))) -
           level;
  };
  const double f_lo = residual(eps_lo);
  const double f_hi = residual(eps_hi);
  if (f_lo == 0.0) return eps_lo;
  if (f_hi == 0.0) return eps_hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) return std::nullopt;
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      residual, eps_lo, eps_hi, f_lo, f_hi,
      [tol](double x, double y) { return std::abs(x - y) <= tol; }, max_iter);
  return 0.5 * (a + b);
}

ResonanceMatch resonance_condition(double gap, double omega, double omega_p, double tol) {
  if (!(omega > 0.0) || !(omega_p > 0.0)) {
    throw NonPositiveFrequency("drive and probe frequencies must be > 0");
  }
  ResonanceMatch m;
  m.k = static_cast<int>(std::floor(omega_p / omega));
  m.lower_branch = omega_p - m.k * omega;
  m.upper_branch = (m.k + 1) * omega - omega_p;
  const bool lower = std::abs(gap - m.lower_branch) <= tol;
  const bool upper = std::abs(gap - m.upper_branch) <= tol;
  if (lower && upper) {
    m.branch = ResonanceBranch::Both;
  } else if (lower) {
    m.branch = ResonanceBranch::Lower;
  } else if (upper) {
    m.branch = ResonanceBranch::Upper;
  }
  return m;
}

}  // namespace quasispec
