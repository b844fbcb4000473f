#pragma once

#include <cmath>
#include <map>
#include <stdexcept>

#include "shepwm/angles.hpp"

namespace shepwm {

namespace detail {

// Kahan compensated accumulator. The alternating cosine sums and the THD
// ratio sums are specified to 1e-12 relative accuracy, which plain
// left-to-right summation does not guarantee once terms nearly cancel.
class kahan_sum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail

/// Amplitudes of the output-voltage harmonics, rank -> b_n (volts).
/// Ranks absent from the map count as zero amplitude.
struct harmonic_spectrum {
  std::map<int, double> entries;

  double fundamental() const {
    auto it = entries.find(1);
    if (it == entries.end())
      throw std::domain_error("harmonic_spectrum: fundamental (n=1) missing");
    return it->second;
  }

  double amplitude(int n) const {
    auto it = entries.find(n);
    return it == entries.end() ? 0.0 : it->second;
  }
};

/// Sine-series amplitude of odd harmonic n for the three-level quarter-wave
/// waveform: b_n = (4V / n pi) * sum_i (-1)^(i+1) cos(n theta_i), the sign
/// alternation starting positive at i = 1.
inline double evaluate_bn(const switching_angle_set& angles, double v, int n) {
  if (n < 1 || n % 2 == 0)
    throw std::invalid_argument(
        "evaluate_bn: harmonic rank must be odd and positive (odd-symmetric waveform)");
  detail::kahan_sum sum;
  double sign = 1.0;
  for (double theta : angles.radians()) {
    sum.add(sign * std::cos(n * theta));
    sign = -sign;
  }
  return 4.0 * v / (n * pi) * sum.value();
}

inline double fundamental_amplitude(const switching_angle_set& angles, double v) {
  return evaluate_bn(angles, v, 1);
}

/// All ranks 1..n_max: odd ranks via evaluate_bn, even ranks exactly zero
/// (quarter-wave symmetry kills them in the ideal model; keeping them in the
/// map lets THD truncation run over a dense rank range).
inline harmonic_spectrum analytic_spectrum(const switching_angle_set& angles, double v,
                                           int n_max) {
  if (n_max < 1) throw std::invalid_argument("analytic_spectrum: n_max must be >= 1");
  harmonic_spectrum spectrum;
  for (int n = 1; n <= n_max; ++n)
    spectrum.entries[n] = (n % 2 == 1) ? evaluate_bn(angles, v, n) : 0.0;
  return spectrum;
}

/// THD truncated at n_max: sqrt(sum_{h=2..n_max} (b_h / b_1)^2).
inline double thd(const harmonic_spectrum& spectrum, int n_max = 49) {
  if (n_max < 2) throw std::invalid_argument("thd: n_max must be >= 2");
  const double b1 = spectrum.fundamental();
  if (b1 == 0.0)
    throw std::domain_error("thd: zero fundamental (M = 0 or invalid spectrum)");
  detail::kahan_sum sum;
  for (const auto& [rank, amplitude] : spectrum.entries) {
    if (rank < 2 || rank > n_max) continue;
    const double ratio = amplitude / b1;
    sum.add(ratio * ratio);
  }
  return std::sqrt(sum.value());
}

}  // namespace shepwm
