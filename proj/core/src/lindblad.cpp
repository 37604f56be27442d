#include "quasispec/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include "quasispec/errors.hpp"

namespace quasispec {

namespace {

namespace odeint = boost::numeric::odeint;
using Mat4 = Eigen::Matrix4d;
using Vec4c = Eigen::Matrix<std::complex<double>, 4, 1>;
using State = std::vector<double>;

constexpr double kResidualTol = 1e-8;

// Coordinates c = (Tr X, Tr sx X, Tr sy X, Tr sz X). For Hermitian X the
// generator acts as a real matrix, and since it is linear the same matrix
// propagates the non-Hermitian operators of the regression theorem.
Mat4 dissipator(const QubitParams& p, const LindbladSpec& s) {
  const double w0 = p.omega0();
  const double down_up_sum = 1.0 / s.t1;
  // Detailed balance: up / down = exp(-beta w0).
  const double boltz = std::isinf(s.beta) ? 0.0 : std::exp(-s.beta * w0);
  const double down = down_up_sum / (1.0 + boltz);
  const double up = down_up_sum - down;
  const double transverse = 1.0 / s.t2;

  Mat4 frame = Mat4::Zero();  // eigenframe (c0, x', y', z')
  frame(1, 1) = -transverse;
  frame(2, 2) = -transverse;
  frame(3, 3) = -down_up_sum;
  frame(3, 0) = -(down - up);

  // Rotation taking lab coordinates to the frame whose z' is the H0 axis.
  const double sin_t = p.delta / w0;
  const double cos_t = p.eps0 / w0;
  Mat4 r = Mat4::Zero();
  r(0, 0) = 1.0;
  r(1, 1) = cos_t;
  r(1, 3) = -sin_t;
  r(2, 2) = 1.0;
  r(3, 1) = sin_t;
  r(3, 3) = cos_t;
  return r.transpose() * frame * r;
}

Mat4 coherent(const QubitParams& p, double t) {
  const double hx = p.delta;
  const double hz = p.eps0 + p.amp * std::cos(t);
  Mat4 g = Mat4::Zero();
  // d r / dt = h x r with hy = 0.
  g(1, 2) = -hz;
  g(2, 1) = hz;
  g(2, 3) = -hx;
  g(3, 2) = hx;
  return g;
}

// sz X for X given in coordinates: returns the coordinates of sz X.
Vec4c left_sz(const Vec4c& c) {
  const std::complex<double> i(0.0, 1.0);
  Vec4c out;
  out(0) = c(3);
  out(1) = -i * c(2);
  out(2) = i * c(1);
  out(3) = c(0);
  return out;
}

double taper(double s, double horizon) {
  const double start = 0.9 * horizon;
  if (s <= start) return 1.0;
  const double x = (s - start) / (horizon - start);
  return 0.5 * (1.0 + std::cos(std::numbers::pi * x));
}

}  // namespace

void LindbladSpec::validate() const {
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw ConfigInvalid("T1 and T2 must be > 0");
  if (1.0 / t2 < 1.0 / (2.0 * t1) * (1.0 - 1e-12)) {
    throw ConfigInvalid("1/T2 must be >= 1/(2 T1)");
  }
  if (!(beta > 0.0)) throw ConfigInvalid("beta must be > 0");
  if (period_samples < 8 || t0_samples < 1 || period_samples % t0_samples != 0) {
    throw ConfigInvalid("t0_samples must divide period_samples (>= 8)");
  }
  if (!(integrator_tol >= 1e-14 && integrator_tol <= 1e-6)) {
    throw ConfigInvalid("integrator tolerance must lie in [1e-14, 1e-6]");
  }
  const double resolution = 2.0 * std::numbers::pi / effective_horizon();
  if (resolution > 0.25 / t2) {
    throw HorizonTooShort("resolution " + std::to_string(resolution) +
                          " is coarser than a quarter linewidth " + std::to_string(0.25 / t2));
  }
}

double LindbladSpec::effective_horizon() const {
  return horizon > 0.0 ? horizon : 30.0 * std::max(t1, t2);
}

CorrelatorSpectrum lindblad_sigma_z_spectrum(const QubitParams& p,
                                             const std::vector<double>& omega_p_grid,
                                             const LindbladSpec& spec) {
  p.validate();
  spec.validate();
  if (!(p.omega0() > 0.0)) throw ConfigInvalid("undriven splitting must be > 0");

  const int samples = spec.period_samples;
  const double period = 2.0 * std::numbers::pi;
  const double dt = period / samples;
  const Mat4 diss = dissipator(p, spec);

  // P_m = Lambda(t_m <- 0) on the sample grid of one period.
  std::vector<Mat4> props(static_cast<std::size_t>(samples) + 1);
  props[0] = Mat4::Identity();
  State x(16);
  Eigen::Map<Mat4>(x.data()) = Mat4::Identity();
  auto rhs = [&](const State& in, State& out, double t) {
    Eigen::Map<Mat4>(out.data()) = (coherent(p, t) + diss) * Eigen::Map<const Mat4>(in.data());
  };
  auto stepper = odeint::make_controlled(spec.integrator_tol, spec.integrator_tol,
                                         odeint::runge_kutta_fehlberg78<State>());
  try {
    for (int m = 1; m <= samples; ++m) {
      odeint::integrate_adaptive(stepper, rhs, x, (m - 1) * dt, m * dt, dt / 4.0,
                                 odeint::null_observer());
      props[static_cast<std::size_t>(m)] = Eigen::Map<const Mat4>(x.data());
    }
  } catch (const std::exception& e) {
    throw IntegratorFailure(std::string("propagator integration failed: ") + e.what());
  }
  const Mat4 mono = props.back();

  CorrelatorSpectrum out;
  out.omega_p = omega_p_grid;
  for (const Mat4& pm : props) {
    const double trace_err =
        std::abs(pm(0, 0) - 1.0) + pm.block<1, 3>(0, 1).cwiseAbs().maxCoeff();
    out.max_trace_error = std::max(out.max_trace_error, trace_err);
  }

  // Periodic fixed point with unit trace: (M_rr - 1) r = -M_r0.
  const Eigen::Matrix3d a = mono.block<3, 3>(1, 1) - Eigen::Matrix3d::Identity();
  const Eigen::Vector3d r = a.fullPivLu().solve(-mono.block<3, 1>(1, 0));
  Eigen::Vector4d c_ss;
  c_ss << 1.0, r;
  out.periodicity_residual = (mono * c_ss - c_ss).norm();
  if (!(out.periodicity_residual <= kResidualTol)) {
    throw SteadyStateNotReached("periodic fixed point residual " +
                                std::to_string(out.periodicity_residual));
  }

  std::vector<Eigen::Vector4d> rho(static_cast<std::size_t>(samples));
  double sz_sum = 0.0;
  for (int m = 0; m < samples; ++m) {
    rho[static_cast<std::size_t>(m)] = props[static_cast<std::size_t>(m)] * c_ss;
    const double bloch = rho[static_cast<std::size_t>(m)].tail<3>().norm();
    out.min_eigenvalue = std::min(out.min_eigenvalue, 0.5 * (1.0 - bloch));
    sz_sum += rho[static_cast<std::size_t>(m)](3);
  }
  out.mean_sz = sz_sum / samples;

  // Connected correlator averaged over t0 = t_j, j a multiple of the stride.
  const double horizon = spec.effective_horizon();
  const long steps = static_cast<long>(std::floor(horizon / dt));
  const int stride = samples / spec.t0_samples;
  std::vector<std::complex<double>> corr(static_cast<std::size_t>(steps) + 1, 0.0);
  for (int j = 0; j < samples; j += stride) {
    const Eigen::Vector4d& rj = rho[static_cast<std::size_t>(j)];
    const Vec4c x0 = left_sz(rj.cast<std::complex<double>>()) - rj(3) * rj.cast<std::complex<double>>();
    // v = P_j^{-1} x0, then Lambda(t_j + s <- t_j) x0 = P_m M^q v at j + s/dt = qR + m.
    Vec4c w = props[static_cast<std::size_t>(j)].inverse().cast<std::complex<double>>() * x0;
    long index = j;
    for (long s = 0; s <= steps; ++s, ++index) {
      const long m = index % samples;
      if (m == 0 && index > 0) w = mono.cast<std::complex<double>>() * w;
      const Vec4c evolved = props[static_cast<std::size_t>(m)].cast<std::complex<double>>() * w;
      corr[static_cast<std::size_t>(s)] += evolved(3);
    }
  }
  for (auto& c : corr) c /= static_cast<double>(spec.t0_samples);

  const double prefactor = spec.amp_p * spec.amp_p / 16.0;
  out.values.reserve(omega_p_grid.size());
  for (double wp : omega_p_grid) {
    std::complex<double> integral = 0.0;
    const std::complex<double> rot = std::exp(std::complex<double>(0.0, wp * dt));
    std::complex<double> phase = 1.0;
    for (long s = 0; s <= steps; ++s) {
      const double weight = (s == 0 || s == steps) ? 0.5 : 1.0;
      integral += weight * taper(s * dt, horizon) * corr[static_cast<std::size_t>(s)] * phase;
      phase *= rot;
      if ((s & 1023) == 0) phase /= std::abs(phase);
    }
    out.values.push_back(prefactor * 2.0 * (integral * dt).real());
  }
  return out;
}

}  // namespace quasispec
