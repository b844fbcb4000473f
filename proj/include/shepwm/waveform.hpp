#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "shepwm/angles.hpp"
#include "shepwm/detail/fft.hpp"
#include "shepwm/harmonics.hpp"

namespace shepwm {

struct waveform_spec {
  switching_angle_set angles;
  double dc_voltage = 1.0;
  double fundamental_hz = 50.0;
  std::size_t samples_per_period = std::size_t(1) << 16;

  void validate() const {
    if (!(fundamental_hz > 0.0))
      throw std::invalid_argument("waveform_spec: fundamental frequency must be > 0");
    if (samples_per_period < 64)
      throw std::invalid_argument("waveform_spec: need at least 64 samples per period");
  }
};

struct waveform_sample {
  double time_s = 0.0;
  double voltage = 0.0;
};

/// One fundamental period of the three-level output voltage, uniformly
/// sampled. Every voltage is exactly -V, 0 or +V, and samples half a period
/// apart sum to zero by construction.
struct waveform {
  std::vector<waveform_sample> samples;
  double period_s = 0.0;

  double rms() const {
    detail::kahan_sum sum;
    for (const waveform_sample& s : samples) sum.add(s.voltage * s.voltage);
    return std::sqrt(sum.value() / double(samples.size()));
  }
};

/// Instantaneous output level at phase theta.
///
/// The waveform family: on the first quarter, with theta_0 = 0 and
/// theta_{p+1} = pi/2, the level on (theta_i, theta_{i+1}) is +V for odd i and
/// 0 for even i; the second quarter mirrors the first (theta -> pi - theta)
/// and the second half-period negates the first. This is the unique
/// piecewise-constant {-V, 0, +V} family whose sine coefficients equal the
/// alternating sum (4V / n pi) sum_i (-1)^(i+1) cos(n theta_i): integrating
/// V sin(n theta) over pulse (theta_1, theta_2) gives
/// (V/n)(cos n theta_1 - cos n theta_2), the next pulse adds + cos n theta_3,
/// and for odd p the final pulse reaching pi/2 contributes cos(n pi / 2) = 0
/// for odd n.
///
/// Levels are right-continuous at switching instants: an exact hit takes the
/// level of the interval to the right.
inline double level_at(const switching_angle_set& angles, double v, double theta) {
  theta = std::fmod(theta, 2.0 * pi);
  if (theta < 0.0) theta += 2.0 * pi;
  double sign = 1.0;
  if (theta >= pi) {
    theta -= pi;
    sign = -1.0;
  }
  // Transitions in [0, pi) sit at theta_i and pi - theta_i; the level is +-V
  // exactly when an odd number of them lies at or below theta.
  std::size_t crossings = 0;
  for (double angle : angles.radians()) {
    if (angle <= theta) ++crossings;
    if (pi - angle <= theta) ++crossings;
  }
  return (crossings % 2 == 1) ? sign * v : 0.0;
}

/// Samples one period at t_k = k T / N. For even N the second half-period is
/// emitted as the negation of the first, which makes the half-wave
/// antisymmetry invariant exact rather than subject to phase rounding.
inline waveform synthesize(const waveform_spec& spec) {
  spec.validate();
  const std::size_t n = spec.samples_per_period;
  const double period = 1.0 / spec.fundamental_hz;
  waveform wave;
  wave.period_s = period;
  wave.samples.resize(n);
  const std::size_t direct = (n % 2 == 0) ? n / 2 : n;
  for (std::size_t k = 0; k < direct; ++k) {
    const double phase = 2.0 * pi * double(k) / double(n);
    wave.samples[k] = {double(k) * period / double(n),
                       level_at(spec.angles, spec.dc_voltage, phase)};
  }
  for (std::size_t k = direct; k < n; ++k)
    wave.samples[k] = {double(k) * period / double(n), -wave.samples[k - n / 2].voltage};
  return wave;
}

/// Numeric Fourier coefficients of a sampled waveform plus the diagnostics
/// that should vanish for an odd function.
struct spectrum_result {
  harmonic_spectrum b;       // sine coefficients, ranks 1..n_max (even ranks included)
  double a0 = 0.0;           // mean
  std::map<int, double> a;   // cosine coefficients, ranks 1..n_max
};

/// Rectangle-rule discretization of b_n = (2/T) integral U(t) sin(n w t) dt
/// (and the a_n / a_0 counterparts) over the period samples:
/// b_n = (2/N) sum_k U_k sin(2 pi n k / N). For power-of-two N the sums are
/// evaluated through one radix-2 DFT, which yields bit-equivalent mathematics
/// at N log N cost; otherwise they are accumulated directly.
inline spectrum_result numeric_spectrum(const waveform& wave, int n_max) {
  const std::size_t n_samples = wave.samples.size();
  if (n_max < 1) throw std::invalid_argument("numeric_spectrum: n_max must be >= 1");
  if (std::size_t(n_max) >= n_samples / 4)
    throw std::invalid_argument(
        "numeric_spectrum: n_max must be below samples/4 to stay clear of aliasing");

  spectrum_result out;
  if (detail::is_power_of_two(n_samples)) {
    std::vector<std::complex<double>> data(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k) data[k] = {wave.samples[k].voltage, 0.0};
    detail::fft(data);
    out.a0 = data[0].real() / double(n_samples);
    for (int n = 1; n <= n_max; ++n) {
      out.a[n] = 2.0 * data[n].real() / double(n_samples);
      out.b.entries[n] = -2.0 * data[n].imag() / double(n_samples);
    }
  } else {
    detail::kahan_sum mean;
    for (const waveform_sample& s : wave.samples) mean.add(s.voltage);
    out.a0 = mean.value() / double(n_samples);
    for (int n = 1; n <= n_max; ++n) {
      detail::kahan_sum sin_sum, cos_sum;
      for (std::size_t k = 0; k < n_samples; ++k) {
        const double arg = 2.0 * pi * double(n) * double(k) / double(n_samples);
        sin_sum.add(wave.samples[k].voltage * std::sin(arg));
        cos_sum.add(wave.samples[k].voltage * std::cos(arg));
      }
      out.b.entries[n] = 2.0 * sin_sum.value() / double(n_samples);
      out.a[n] = 2.0 * cos_sum.value() / double(n_samples);
    }
  }
  return out;
}

}  // namespace shepwm
