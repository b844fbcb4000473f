#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace shepwm {

/// Solves the dense n x n system A x = b by Gaussian elimination with partial
/// pivoting. `a` is row-major. Returns std::nullopt when the largest available
/// pivot falls below pivot_tol (singular or near-singular system).
inline std::optional<std::vector<double>> solve_linear_system(std::vector<double> a,
                                                              std::vector<double> b,
                                                              std::size_t n,
                                                              double pivot_tol = 1e-12) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot_row = col;
    double pivot_mag = std::fabs(a[col * n + col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double mag = std::fabs(a[row * n + col]);
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = row;
      }
    }
    if (!(pivot_mag >= pivot_tol)) return std::nullopt;
    if (pivot_row != col) {
      for (std::size_t j = col; j < n; ++j) std::swap(a[col * n + j], a[pivot_row * n + j]);
      std::swap(b[col], b[pivot_row]);
    }
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = a[row * n + col] / a[col * n + col];
      if (factor == 0.0) continue;
      a[row * n + col] = 0.0;
      for (std::size_t j = col + 1; j < n; ++j) a[row * n + j] -= factor * a[col * n + j];
      b[row] -= factor * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a[i * n + j] * x[j];
    x[i] = acc / a[i * n + i];
  }
  return x;
}

}  // namespace shepwm
