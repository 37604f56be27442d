#include "quasispec/analytic_qubit.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "quasispec/errors.hpp"

namespace quasispec {

namespace {

constexpr double kPoleTol = 1e-6;
constexpr double kRelativeTermTol = 1e-12;

// 2 sum_{k != n} g(k)^2 / (diag - k), summed outward from k = 0 until the
// terms on both sides have dropped below the relative threshold in the region
// |k| > decay_start where the Bessel weights fall off monotonically.
template <class Coupling>
double second_order_shift(double diag, int n, double decay_start, Coupling g) {
  double sum = 0.0;
  auto add = [&](int k) -> double {
    if (k == n) return 0.0;
    const double c = g(k);
    if (c == 0.0) return 0.0;
    const double denom = diag - k;
    if (std::abs(denom) < kPoleTol) {
      throw NearPole("denominator |diag - " + std::to_string(k) +
                     "| below 1e-6; perturbative shift undefined");
    }
    const double term = 2.0 * c * c / denom;
    sum += term;
    return term;
  };

  add(0);
  const int k_limit = 100000;
  for (int k = 1; k < k_limit; ++k) {
    const double up = add(k);
    const double down = add(-k);
    const bool beyond = k > decay_start + std::abs(n) + 2;
    if (beyond && std::abs(up) <= kRelativeTermTol * std::abs(sum) &&
        std::abs(down) <= kRelativeTermTol * std::abs(sum)) {
      break;
    }
    if (beyond && sum == 0.0 && up == 0.0 && down == 0.0) break;
  }
  return sum;
}

}  // namespace

double QubitParams::omega0() const { return std::hypot(eps0, delta); }

void QubitParams::validate() const {
  if (!(delta >= 0.0)) throw ConfigInvalid("delta must be >= 0");
  if (!(amp >= 0.0)) throw ConfigInvalid("amp must be >= 0");
  if (!std::isfinite(eps0)) throw ConfigInvalid("eps0 must be finite");
}

double rwa_quasienergy_gap(const QubitParams& p, int n, BesselFn j) {
  p.validate();
  return std::hypot(p.eps0 - n, p.delta * j(n, p.amp));
}

double delta_shift_diabatic(const QubitParams& p, int n, BesselFn j) {
  p.validate();
  if (p.delta == 0.0) return 0.0;
  return second_order_shift(p.eps0, n, p.amp,
                            [&](int k) { return 0.5 * p.delta * j(k, p.amp); });
}

double corrected_quasienergy_gap(const QubitParams& p, int n, BesselFn j) {
  const double shift = delta_shift_diabatic(p, n, j);
  return std::hypot(p.eps0 + shift - n, p.delta * j(n, p.amp));
}

namespace {

double adiabatic_coupling(const QubitParams& p, int k, BesselFn j) {
  const double arg = p.amp * p.eps0 / p.omega0();
  return k * p.delta / (2.0 * p.eps0) * j(k, arg);
}

}  // namespace

AdiabaticParams adiabatic_params(const QubitParams& p, int n, BesselFn j) {
  p.validate();
  if (p.eps0 == 0.0) {
    throw DegenerateDiabatic("adiabatic coupling needs eps0 != 0");
  }
  return {p.omega0(), adiabatic_coupling(p, n, j)};
}

double adiabatic_rwa_gap(const QubitParams& p, int n, BesselFn j) {
  const AdiabaticParams a = adiabatic_params(p, n, j);
  return std::hypot(a.diagonal_energy - n, 2.0 * a.coupling);
}

double delta_shift_adiabatic(const QubitParams& p, int n, BesselFn j) {
  p.validate();
  if (p.eps0 == 0.0) {
    throw DegenerateDiabatic("adiabatic coupling needs eps0 != 0");
  }
  if (p.delta == 0.0) return 0.0;
  const double arg = std::abs(p.amp * p.eps0 / p.omega0());
  return second_order_shift(p.omega0(), n, arg,
                            [&](int k) { return adiabatic_coupling(p, k, j); });
}

double adiabatic_corrected_gap(const QubitParams& p, int n, BesselFn j) {
  const AdiabaticParams a = adiabatic_params(p, n, j);
  const double shift = delta_shift_adiabatic(p, n, j);
  return std::hypot(a.diagonal_energy + shift - n, 2.0 * a.coupling);
}

std::optional<double> lz_probability(const QubitParams& p, double drive_frequency) {
  p.validate();
  if (!(p.amp > std::abs(p.eps0))) return std::nullopt;
  const double sweep = std::sqrt(p.amp * p.amp - p.eps0 * p.eps0);
  return std::exp(-2.0 * std::numbers::pi * p.delta * p.delta /
                  (4.0 * drive_frequency * sweep));
}

Basis choose_basis(const QubitParams& p) {
  return p.amp < std::abs(p.eps0) ? Basis::Adiabatic : Basis::Diabatic;
}

int nearest_resonance(const QubitParams& p) {
  const double diag = choose_basis(p) == Basis::Adiabatic ? p.omega0() : p.eps0;
  return static_cast<int>(std::lround(diag));
}

double analytic_quasienergy_gap(const QubitParams& p, int n, BesselFn j) {
  return choose_basis(p) == Basis::Adiabatic ? adiabatic_corrected_gap(p, n, j)
                                             : corrected_quasienergy_gap(p, n, j);
}

double rwa_transition_amplitude(const QubitParams& p, int n, BesselFn j) {
  const double gap = rwa_quasienergy_gap(p, n, j);
  if (gap == 0.0) throw DegenerateGap("RWA gap vanishes; |F_fi|^2 undefined");
  const double coupling = p.delta * j(n, p.amp);
  return coupling * coupling / (gap * gap);
}

}  // namespace quasispec
