#pragma once

namespace quasispec {

/// Signature of an integer-order Bessel function of the first kind J_n(x).
/// The analytic routines accept one so that a deliberately faulty
/// implementation can be injected when exercising the verifier.
using BesselFn = double (*)(int n, double x);

/// J_n(x) for any integer n and real x, via J_{-n} = (-1)^n J_n and
/// J_n(-x) = (-1)^n J_n(x).
double bessel_j(int n, double x);

}  // namespace quasispec
