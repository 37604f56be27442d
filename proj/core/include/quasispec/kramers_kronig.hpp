#pragma once

// Dispersion from absorption on a uniform frequency grid:
//     alpha'(w) = (1/pi) P int alpha''(w') / (w' - w) dw'.
// The principal value is discretized with the staggered (odd-offset) rule
//     alpha'_i = (2/pi) sum_{j - i odd} alpha''_j / (j - i),
// which needs no grid step and is evaluated as an FFT convolution with the
// signal zero-padded to four times its length.

#include <vector>

namespace quasispec {

/// Requires >= 128 uniformly spaced points (strictly increasing) and absorption
/// decayed below 1% of its peak magnitude at both ends. Throws GridTooCoarse,
/// TailsNotDecayed or ConfigInvalid. A zero input gives a zero output.
std::vector<double> kramers_kronig(const std::vector<double>& grid,
                                   const std::vector<double>& absorption);

/// The bare discrete transform without the grid and tail preconditions, so it
/// can be applied to a dispersion curve (whose tails decay only as 1/w).
std::vector<double> hilbert_transform(const std::vector<double>& samples);

}  // namespace quasispec
