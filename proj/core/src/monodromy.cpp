#include "quasispec/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "quasispec/errors.hpp"

namespace quasispec {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::vector<double>;

// Interleaved (re, im) column-major storage of a d x d complex matrix.
Eigen::Map<const CMatrix> as_matrix(const State& s, int d) {
  return {reinterpret_cast<const Complex*>(s.data()), d, d};
}
Eigen::Map<CMatrix> as_matrix(State& s, int d) {
  return {reinterpret_cast<Complex*>(s.data()), d, d};
}

}  // namespace

PropagatorResult monodromy_propagator(const AtomicHamiltonian& h, double omega,
                                      double integrator_tol) {
  if (!(omega > 0.0)) throw NonPositiveFrequency("drive frequency must be > 0");
  if (!(integrator_tol >= 1e-14 && integrator_tol <= 1e-6)) {
    throw ConfigInvalid("integrator tolerance must lie in [1e-14, 1e-6]");
  }
  const int d = h.dimension();
  const double period = 2.0 * std::numbers::pi / omega;

  State u(static_cast<std::size_t>(2 * d * d), 0.0);
  as_matrix(u, d) = CMatrix::Identity(d, d);

  auto rhs = [&](const State& x, State& dxdt, double t) {
    const CMatrix ht = h.at_time(t, omega);
    as_matrix(dxdt, d) = Complex(0.0, -1.0) * (ht * as_matrix(x, d));
  };

  auto stepper = odeint::make_controlled(integrator_tol, integrator_tol,
                                         odeint::runge_kutta_fehlberg78<State>());
  try {
    odeint::integrate_adaptive(stepper, rhs, u, 0.0, period, period / 64.0,
                               odeint::null_observer());
  } catch (const std::exception& e) {
    throw IntegratorFailure(std::string("one-period integration failed: ") + e.what());
  }
  if (!std::all_of(u.begin(), u.end(), [](double v) { return std::isfinite(v); })) {
    throw IntegratorFailure("propagator has non-finite entries");
  }

  PropagatorResult out;
  out.propagator = as_matrix(u, d);
  out.unitarity_error =
      (out.propagator.adjoint() * out.propagator - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  out.determinant_error = std::abs(std::abs(out.propagator.determinant()) - 1.0);

  Eigen::ComplexEigenSolver<CMatrix> solver(out.propagator, false);
  if (solver.info() != Eigen::Success) throw IntegratorFailure("propagator eigensolve failed");
  for (Eigen::Index i = 0; i < d; ++i) {
    out.quasienergies.push_back(fold_to_zone(-std::arg(solver.eigenvalues()[i]) / period, omega));
  }
  std::sort(out.quasienergies.begin(), out.quasienergies.end());
  return out;
}

std::vector<double> monodromy_quasienergies(const AtomicHamiltonian& h, double omega,
                                            double integrator_tol) {
  return monodromy_propagator(h, omega, integrator_tol).quasienergies;
}

}  // namespace quasispec
