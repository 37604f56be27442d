#include "quasispec/bessel.hpp"

#include <cmath>
#include <cstdlib>

namespace quasispec {

double bessel_j(int n, double x) {
  const int order = std::abs(n);
  double sign = 1.0;
  if (n < 0 && (order % 2) != 0) sign = -sign;
  if (x < 0.0 && (order % 2) != 0) sign = -sign;
  return sign * std::cyl_bessel_j(static_cast<double>(order), std::abs(x));
}

}  // namespace quasispec
