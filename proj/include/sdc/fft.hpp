#ifndef SDC_FFT_HPP
#define SDC_FFT_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "sdc/errors.hpp"

namespace sdc {

// Iterative radix-2 Cooley-Tukey. Sizes must be powers of two; every
// window the system exposes (32..4096) satisfies that.
template <typename T>
class Fft {
 public:
  explicit Fft(int n) : n_(n) {
    if (n < 2 || (n & (n - 1)) != 0)
      throw ConfigError("Fft: size must be a power of two >= 2, got " + std::to_string(n));
    const int levels = log2i(n);
    bitrev_.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      int r = 0;
      for (int b = 0; b < levels; ++b) r |= ((i >> b) & 1) << (levels - 1 - b);
      bitrev_[static_cast<size_t>(i)] = r;
    }
    tw_.resize(static_cast<size_t>(n / 2));
    for (int k = 0; k < n / 2; ++k) {
      const double ang = -2.0 * M_PI * k / n;
      tw_[static_cast<size_t>(k)] = {static_cast<T>(std::cos(ang)),
                                     static_cast<T>(std::sin(ang))};
    }
  }

  int size() const { return n_; }

  // In-place forward transform (no normalization).
  void forward(std::complex<T>* a) const { run(a, false); }

  // In-place inverse transform, scaled by 1/n.
  void inverse(std::complex<T>* a) const {
    run(a, true);
    const T inv = T(1) / static_cast<T>(n_);
    for (int i = 0; i < n_; ++i) a[i] *= inv;
  }

  // Inverse without the 1/n factor (adjoint of forward).
  void inverse_unscaled(std::complex<T>* a) const { run(a, true); }

  // Real input -> first n/2+1 bins.
  void rfft(const T* x, std::complex<T>* out) const {
    std::vector<std::complex<T>> buf(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) buf[static_cast<size_t>(i)] = {x[i], T(0)};
    forward(buf.data());
    for (int k = 0; k <= n_ / 2; ++k) out[k] = buf[static_cast<size_t>(k)];
  }

  // Hermitian bins (n/2+1) -> real signal of length n.
  void irfft(const std::complex<T>* bins, T* out) const {
    std::vector<std::complex<T>> buf(static_cast<size_t>(n_));
    for (int k = 0; k <= n_ / 2; ++k) buf[static_cast<size_t>(k)] = bins[k];
    for (int k = n_ / 2 + 1; k < n_; ++k)
      buf[static_cast<size_t>(k)] = std::conj(bins[n_ - k]);
    inverse(buf.data());
    for (int i = 0; i < n_; ++i) out[i] = buf[static_cast<size_t>(i)].real();
  }

  static int log2i(int n) {
    int l = 0;
    while ((1 << l) < n) ++l;
    return l;
  }

 private:
  void run(std::complex<T>* a, bool inv) const {
    for (int i = 0; i < n_; ++i) {
      const int j = bitrev_[static_cast<size_t>(i)];
      if (j > i) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n_; len <<= 1) {
      const int half = len / 2;
      const int step = n_ / len;
      for (int i = 0; i < n_; i += len) {
        for (int k = 0; k < half; ++k) {
          std::complex<T> w = tw_[static_cast<size_t>(k * step)];
          if (inv) w = std::conj(w);
          const std::complex<T> u = a[i + k];
          const std::complex<T> v = a[i + k + half] * w;
          a[i + k] = u + v;
          a[i + k + half] = u - v;
        }
      }
    }
  }

  int n_;
  std::vector<int> bitrev_;
  std::vector<std::complex<T>> tw_;
};

}  // namespace sdc

#endif  // SDC_FFT_HPP
