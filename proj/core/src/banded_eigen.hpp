#pragma once

// Thin wrapper over LAPACK's Hermitian band eigensolver (zhbevx), used for the
// two-mode Floquet matrix whose drive-outer ordering is narrowly banded.

#include <vector>

#include "quasispec/floquet.hpp"

namespace quasispec::detail {

/// Upper band storage, column-major with leading dimension kd + 1:
/// element (i, j), j - kd <= i <= j, lives at (kd + i - j) + j (kd + 1).
class HermitianBand {
 public:
  HermitianBand(int n, int kd);

  int size() const { return n_; }
  int bandwidth() const { return kd_; }

  /// Adds v to A(i, j) with i <= j <= i + kd. The (j, i) element is implied.
  void add_upper(int i, int j, Complex v);

  std::vector<Complex>& storage() { return ab_; }

 private:
  int n_;
  int kd_;
  std::vector<Complex> ab_;
};

struct BandEigen {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // n x m when requested, empty otherwise
};

/// Eigenpairs with eigenvalue in the half-open interval (lo, hi]. The band
/// storage is overwritten. Throws NoConvergence when LAPACK reports failure.
BandEigen band_eigen_in_window(HermitianBand band, double lo, double hi, bool want_vectors);

}  // namespace quasispec::detail
