#include "banded_eigen.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <string>

#include "quasispec/errors.hpp"

namespace quasispec::detail {

HermitianBand::HermitianBand(int n, int kd)
    : n_(n), kd_(kd), ab_(static_cast<std::size_t>(kd + 1) * static_cast<std::size_t>(n)) {}

void HermitianBand::add_upper(int i, int j, Complex v) {
  const auto idx = static_cast<std::size_t>(kd_ + i - j) +
                   static_cast<std::size_t>(j) * static_cast<std::size_t>(kd_ + 1);
  ab_[idx] += v;
}

BandEigen band_eigen_in_window(HermitianBand band, double lo, double hi, bool want_vectors) {
  const lapack_int n = band.size();
  const lapack_int kd = band.bandwidth();
  std::vector<Complex> q(want_vectors ? static_cast<std::size_t>(n) * n : 1);
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<Complex> z(want_vectors ? static_cast<std::size_t>(n) * n : 1);
  std::vector<lapack_int> ifail(static_cast<std::size_t>(n));
  lapack_int found = 0;
  const double abstol = 2.0 * LAPACKE_dlamch('S');

  const lapack_int info = LAPACKE_zhbevx(
      LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'V', 'U', n, kd, band.storage().data(),
      kd + 1, q.data(), want_vectors ? n : 1, lo, hi, 0, 0, abstol, &found, w.data(), z.data(),
      want_vectors ? n : 1, ifail.data());
  if (info != 0) {
    throw NoConvergence("band eigensolver returned info = " + std::to_string(info));
  }

  BandEigen out;
  out.values.assign(w.begin(), w.begin() + found);
  if (want_vectors) {
    out.vectors.resize(n, found);
    for (lapack_int c = 0; c < found; ++c) {
      for (lapack_int r = 0; r < n; ++r) {
        out.vectors(r, c) = z[static_cast<std::size_t>(r) + static_cast<std::size_t>(c) * n];
      }
    }
  }
  return out;
}

}  // namespace quasispec::detail
