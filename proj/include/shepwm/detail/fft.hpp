#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace shepwm::detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 Cooley-Tukey DFT,
// X[k] = sum_j x[j] exp(-2 pi i j k / n). Requires n to be a power of two.
// Twiddles come from a directly evaluated table; accumulating w *= w_len
// across a 2^19-wide stage would drift by ~n*eps, which the spectral
// diagnostics (|a_n| < 1e-9 V) cannot afford.
inline void fft(std::vector<std::complex<double>>& data) {
  const std::size_t n = data.size();
  if (n < 2) return;

  std::vector<std::complex<double>> twiddle(n / 2);
  for (std::size_t j = 0; j < n / 2; ++j) {
    const double angle = -2.0 * std::numbers::pi * double(j) / double(n);
    twiddle[j] = {std::cos(angle), std::sin(angle)};
  }

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> even = data[start + k];
        const std::complex<double> odd = data[start + k + len / 2] * twiddle[k * stride];
        data[start + k] = even + odd;
        data[start + k + len / 2] = even - odd;
      }
    }
  }
}

}  // namespace shepwm::detail
