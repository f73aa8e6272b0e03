#include "frostnet/toeplitz.hpp"

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <stdexcept>

namespace frostnet {

namespace {

// FFTW planning is not thread-safe.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct RealFft {
  std::size_t n;
  double* real;
  fftw_complex* freq;
  fftw_plan forward;
  fftw_plan backward;

  explicit RealFft(std::size_t size) : n(size) {
    real = fftw_alloc_real(n);
    freq = fftw_alloc_complex(n / 2 + 1);
    if (!real || !freq) throw std::bad_alloc();
    std::lock_guard<std::mutex> lock(plan_mutex());
    forward = fftw_plan_dft_r2c_1d(static_cast<int>(n), real, freq, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(static_cast<int>(n), freq, real, FFTW_ESTIMATE);
  }
  ~RealFft() {
    {
      std::lock_guard<std::mutex> lock(plan_mutex());
      fftw_destroy_plan(forward);
      fftw_destroy_plan(backward);
    }
    fftw_free(real);
    fftw_free(freq);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::vector<std::complex<double>> transform(const std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) real[i] = i < x.size() ? x[i] : 0.0;
    fftw_execute(forward);
    std::vector<std::complex<double>> out(n / 2 + 1);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {freq[i][0], freq[i][1]};
    return out;
  }

  std::vector<double> inverse(const std::vector<std::complex<double>>& f) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      freq[i][0] = f[i].real();
      freq[i][1] = f[i].imag();
    }
    fftw_execute(backward);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = real[i] / static_cast<double>(n);
    return out;
  }
};

std::size_t padded_size(std::size_t n) {
  std::size_t p = 1;
  while (p < 2 * n) p <<= 1;
  return p;
}

}  // namespace

std::vector<double> autocorrelation(const std::vector<double>& x) {
  std::size_t n = x.size();
  if (n == 0) return {};
  RealFft fft(padded_size(n));
  auto f = fft.transform(x);
  for (auto& v : f) v = std::norm(v);
  auto r = fft.inverse(f);
  r.resize(n);
  return r;
}

std::vector<double> symmetric_toeplitz_apply(const std::vector<double>& kernel,
                                             const std::vector<double>& x) {
  std::size_t n = x.size();
  if (kernel.size() != n) throw std::invalid_argument("kernel and vector lengths differ");
  if (n == 0) return {};
  std::size_t p = padded_size(n);
  // Circulant embedding: c = [k0 .. k_{n-1}, 0 .., k_{n-1} .. k1].
  std::vector<double> c(p, 0.0);
  for (std::size_t d = 0; d < n; ++d) c[d] = kernel[d];
  for (std::size_t d = 1; d < n; ++d) c[p - d] = kernel[d];
  RealFft fft(p);
  auto fc = fft.transform(c);
  auto fx = fft.transform(x);
  for (std::size_t i = 0; i < fc.size(); ++i) fc[i] *= fx[i];
  auto y = fft.inverse(fc);
  y.resize(n);
  return y;
}

}  // namespace frostnet
