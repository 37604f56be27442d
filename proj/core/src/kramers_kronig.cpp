#include "quasispec/kramers_kronig.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "quasispec/errors.hpp"

namespace quasispec {

namespace {

constexpr std::size_t kMinPoints = 128;
constexpr double kTailFraction = 0.01;

// FFTW's planner keeps global state and is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
std::unique_ptr<T[], FftwFree> fftw_buffer(std::size_t n) {
  return std::unique_ptr<T[], FftwFree>(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
}

class RealFft {
 public:
  explicit RealFft(std::size_t n)
      : n_(n), real_(fftw_buffer<double>(n)), spec_(fftw_buffer<fftw_complex>(n / 2 + 1)) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_.get(), spec_.get(),
                                    FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec_.get(), real_.get(),
                                     FFTW_ESTIMATE);
  }
  ~RealFft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::vector<std::complex<double>> forward(const std::vector<double>& x) {
    std::copy(x.begin(), x.end(), real_.get());
    fftw_execute(forward_);
    std::vector<std::complex<double>> out(n_ / 2 + 1);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = {spec_[k][0], spec_[k][1]};
    return out;
  }

  std::vector<double> backward(const std::vector<std::complex<double>>& s) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      spec_[k][0] = s[k].real();
      spec_[k][1] = s[k].imag();
    }
    fftw_execute(backward_);
    std::vector<double> out(real_.get(), real_.get() + n_);
    for (double& v : out) v /= static_cast<double>(n_);
    return out;
  }

 private:
  std::size_t n_;
  std::unique_ptr<double[], FftwFree> real_;
  std::unique_ptr<fftw_complex[], FftwFree> spec_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace

std::vector<double> hilbert_transform(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (n == 0) return {};
  if (std::all_of(samples.begin(), samples.end(), [](double v) { return v == 0.0; })) {
    return std::vector<double>(n, 0.0);
  }
  const std::size_t len = 4 * n;

  // out_i = sum_j x_j k(i - j) with k(m) = -(2/pi)/m for odd m.
  std::vector<double> kernel(len, 0.0);
  for (std::size_t m = 1; m < n; m += 2) {
    const double v = 2.0 / (std::numbers::pi * static_cast<double>(m));
    kernel[m] = -v;
    kernel[len - m] = v;
  }
  std::vector<double> padded(len, 0.0);
  std::copy(samples.begin(), samples.end(), padded.begin());

  RealFft fft(len);
  auto a = fft.forward(padded);
  const auto b = fft.forward(kernel);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] *= b[k];
  std::vector<double> full = fft.backward(a);
  full.resize(n);
  return full;
}

std::vector<double> kramers_kronig(const std::vector<double>& grid,
                                   const std::vector<double>& absorption) {
  if (grid.size() != absorption.size()) {
    throw ConfigInvalid("grid and absorption differ in length");
  }
  const std::size_t n = absorption.size();
  if (n < kMinPoints) {
    throw GridTooCoarse("need at least " + std::to_string(kMinPoints) + " points, got " +
                        std::to_string(n));
  }
  const double step = (grid.back() - grid.front()) / static_cast<double>(n - 1);
  if (!(step > 0.0)) throw ConfigInvalid("grid must be strictly increasing");
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((grid[i] - grid[i - 1]) - step) > 1e-6 * step) {
      throw ConfigInvalid("grid is not uniform");
    }
  }
  double peak = 0.0;
  for (double v : absorption) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return std::vector<double>(n, 0.0);
  const double edge = std::max(std::abs(absorption.front()), std::abs(absorption.back()));
  if (edge >= kTailFraction * peak) {
    throw TailsNotDecayed("edge value is " + std::to_string(edge / peak) +
                          " of the peak; extend the grid");
  }
  return hilbert_transform(absorption);
}

}  // namespace quasispec
